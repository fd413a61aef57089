#include "taxvec/pipeline.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "taxvec/error.hpp"
#include "taxvec/weighting.hpp"

namespace taxvec {

namespace {

// Shared by fit and transform so the two produce bit-identical rows.
FeatureMatrix model_matrix(const FittedModel& model, const std::vector<DocTermCounts>& docs) {
    ColumnIndex index;
    FeatureMatrix matrix;
    matrix.n_rows = docs.size();
    matrix.columns.reserve(model.terms.size());
    for (std::size_t i = 0; i < model.terms.size(); ++i) {
        matrix.columns.push_back(model.terms[i].id);
        index.emplace(model.terms[i].id, ColumnStats{i, model.terms[i].n_t});
    }
    for (std::size_t row = 0; row < docs.size(); ++row) {
        append_row(matrix, row, docs[row], index, model.n_docs_train, model.config.k);
    }
    return matrix;
}

std::vector<DocTermCounts> extract_counts(const std::vector<DocumentTaxonomy>& docs) {
    std::vector<DocTermCounts> counts;
    counts.reserve(docs.size());
    for (const DocumentTaxonomy& doc : docs) counts.push_back(doc.counts);
    return counts;
}

}  // namespace

FitResult fit(const std::vector<std::string>& documents, const std::vector<std::string>& labels,
              const Taxonomy& taxonomy, const PipelineConfig& config) {
    if (documents.empty()) throw Error("cannot fit on an empty corpus");
    if (config.selection.heuristic == Heuristic::mutual_info && labels.empty()) {
        throw Error("the mutual_info heuristic requires class labels");
    }
    if (!labels.empty() && labels.size() != documents.size()) {
        throw Error("got " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(documents.size()) + " documents");
    }

    FitResult result;
    result.model.config = config;
    result.model.n_docs_train = documents.size();
    result.model.taxonomy_fingerprint = taxonomy.fingerprint();

    std::vector<DocumentTaxonomy> docs =
        map_documents(documents, taxonomy, config.wsd, config.depth_cutoff, config.workers);
    std::vector<DocTermCounts> counts = extract_counts(docs);
    result.graph = merge(docs, documents.size());

    if (result.graph.nodes.empty()) {  // nothing mapped; legitimate but term-free
        result.matrix.n_rows = documents.size();
        return result;
    }

    std::vector<std::string> all_columns(result.graph.nodes.begin(), result.graph.nodes.end());
    FeatureMatrix full = build_matrix(result.graph, counts, all_columns, config.k);
    RankedTerms ranked = select_terms(result.graph, full, labels, config.selection);

    result.model.terms.reserve(ranked.size());
    for (const ScoredTerm& term : ranked) {
        result.model.terms.push_back({term.id, result.graph.doc_freq.at(term.id), term.score});
    }
    result.matrix = model_matrix(result.model, counts);
    return result;
}

FeatureMatrix transform(const FittedModel& model, const std::vector<std::string>& documents,
                        const Taxonomy& taxonomy, std::size_t workers) {
    if (taxonomy.fingerprint() != model.taxonomy_fingerprint) {
        throw Error("taxonomy fingerprint mismatch: model was fitted against " +
                    model.taxonomy_fingerprint + ", given " + taxonomy.fingerprint());
    }
    if (model.terms.empty()) throw Error("cannot transform with a model that has no terms");

    std::vector<DocumentTaxonomy> docs =
        map_documents(documents, taxonomy, model.config.wsd, model.config.depth_cutoff, workers);
    return model_matrix(model, extract_counts(docs));
}

void save_model(const FittedModel& model, std::ostream& out) {
    nlohmann::json config;
    config["k"] = model.config.k;
    config["heuristic"] = heuristic_name(model.config.selection.heuristic);
    config["d"] = model.config.selection.d;
    config["window"] = model.config.wsd.window;
    if (model.config.depth_cutoff) {
        config["depth_cutoff"] = *model.config.depth_cutoff;
    } else {
        config["depth_cutoff"] = nullptr;
    }
    config["clean_social"] = model.config.wsd.clean_social;
    config["ppr_alpha"] = model.config.selection.ppr_alpha;
    config["ppr_tol"] = model.config.selection.ppr_tol;
    config["ppr_max_iter"] = model.config.selection.ppr_max_iter;

    nlohmann::json terms = nlohmann::json::array();
    for (const ModelTerm& term : model.terms) {
        terms.push_back({{"id", term.id}, {"n_t", term.n_t}, {"score", term.score}});
    }

    nlohmann::json j;
    j["version"] = model.version;
    j["config"] = config;
    j["n_docs_train"] = model.n_docs_train;
    j["terms"] = terms;
    j["taxonomy_fingerprint"] = model.taxonomy_fingerprint;
    out << j.dump(2) << '\n';
}

FittedModel load_model(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed model stream: ") + e.what());
    }

    FittedModel model;
    try {
        model.version = j.at("version").get<std::string>();
        if (model.version != "1") {
            throw Error("unsupported model version \"" + model.version + "\" (expected \"1\")");
        }
        const nlohmann::json& config = j.at("config");
        model.config.k = config.at("k").get<double>();
        model.config.selection.heuristic = parse_heuristic(config.at("heuristic").get<std::string>());
        model.config.selection.d = config.at("d").get<std::size_t>();
        model.config.wsd.window = config.at("window").get<std::size_t>();
        if (!config.at("depth_cutoff").is_null()) {
            model.config.depth_cutoff = config.at("depth_cutoff").get<std::size_t>();
        }
        model.config.wsd.clean_social = config.at("clean_social").get<bool>();
        model.config.selection.ppr_alpha = config.at("ppr_alpha").get<double>();
        model.config.selection.ppr_tol = config.at("ppr_tol").get<double>();
        model.config.selection.ppr_max_iter = config.at("ppr_max_iter").get<std::size_t>();
        model.n_docs_train = j.at("n_docs_train").get<std::size_t>();
        for (const nlohmann::json& t : j.at("terms")) {
            model.terms.push_back({t.at("id").get<std::string>(), t.at("n_t").get<std::size_t>(),
                                   t.at("score").get<double>()});
        }
        model.taxonomy_fingerprint = j.at("taxonomy_fingerprint").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed model stream: ") + e.what());
    }

    if (model.config.k < 0.0 || model.config.k > 1.0) throw Error("model k outside [0, 1]");
    if (model.config.wsd.window < 1) throw Error("model window must be at least 1");
    if (model.config.selection.d < 1) throw Error("model d must be at least 1");
    if (model.config.selection.ppr_alpha <= 0.0 || model.config.selection.ppr_alpha >= 1.0) {
        throw Error("model ppr_alpha outside (0, 1)");
    }
    if (model.config.selection.ppr_tol <= 0.0) throw Error("model ppr_tol must be positive");
    if (model.config.selection.ppr_max_iter < 1) throw Error("model ppr_max_iter must be at least 1");
    if (model.terms.size() > model.config.selection.d) {
        throw Error("model stores " + std::to_string(model.terms.size()) + " terms but d = " +
                    std::to_string(model.config.selection.d));
    }
    std::set<std::string> seen;
    for (const ModelTerm& term : model.terms) {
        if (!seen.insert(term.id).second) throw Error("model term \"" + term.id + "\" appears twice");
        if (term.n_t < 1 || term.n_t > model.n_docs_train) {
            throw Error("model term \"" + term.id + "\" has n_t = " + std::to_string(term.n_t) +
                        " outside [1, " + std::to_string(model.n_docs_train) + "]");
        }
    }
    return model;
}

}  // namespace taxvec
