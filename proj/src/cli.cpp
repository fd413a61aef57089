#include "taxvec/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "taxvec/corpus.hpp"
#include "taxvec/error.hpp"
#include "taxvec/matrix.hpp"
#include "taxvec/pipeline.hpp"
#include "taxvec/stats.hpp"
#include "taxvec/taxonomy.hpp"
#include "taxvec/weighting.hpp"
#include "taxvec/wndb.hpp"

namespace taxvec {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write \"" + path + "\"");
    return out;
}

CorpusFile read_corpus_file(const std::string& path, bool labeled) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open corpus \"" + path + "\"");
    return read_corpus_tsv(in, labeled);
}

FittedModel load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model \"" + path + "\"");
    return load_model(in);
}

// The sidecar naming convention: a matrix at P has its column/row listing
// at P.json.
void write_matrix_files(const FeatureMatrix& matrix, const std::string& path) {
    {
        std::ofstream out = open_output(path);
        write_matrix_market(matrix, out);
    }
    std::ofstream out = open_output(path + ".json");
    write_matrix_sidecar(matrix, out);
}

FeatureMatrix read_matrix_files(const std::string& path) {
    std::ifstream market(path, std::ios::binary);
    if (!market) throw Error("cannot open matrix \"" + path + "\"");
    std::ifstream sidecar(path + ".json", std::ios::binary);
    if (!sidecar) throw Error("cannot open matrix sidecar \"" + path + ".json\"");
    return read_matrix(market, sidecar);
}

// CLI11's PositiveNumber reports a floating-point range, which reads badly
// on integer flags; this one fails with a plain message instead.
const CLI::Validator kPositiveInt{
    [](std::string& s) {
        unsigned long long v = 0;
        const char* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc{} || p != end || v == 0) return s + " is not a positive integer";
        return std::string{};
    },
    "POSITIVE"};

// Flags shared by every corpus-reading subcommand.
struct CorpusOptions {
    std::string corpus;
    bool labeled = false;
    std::size_t workers = 1;
    std::string stopwords;
};

void add_corpus_flags(CLI::App* cmd, CorpusOptions& o) {
    cmd->add_option("--corpus", o.corpus, "corpus TSV, one document per line")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_flag("--labeled", o.labeled, "treat column 1 of each corpus line as the class label");
    cmd->add_option("--workers", o.workers, "worker threads for document mapping")
        ->check(kPositiveInt);
    cmd->add_option("--stopwords", o.stopwords, "stopword file (one word per line) replacing the built-in list")
        ->check(CLI::ExistingFile);
}

// Flags that configure the mapping itself; persisted into fitted models.
struct WsdOptions {
    std::size_t window = 3;
    bool clean_social = false;
    std::size_t depth_cutoff = 0;
    CLI::Option* depth_opt = nullptr;
};

void add_wsd_flags(CLI::App* cmd, WsdOptions& o) {
    cmd->add_option("--window", o.window, "disambiguation context tokens on each side")
        ->check(kPositiveInt);
    cmd->add_flag("--clean-social", o.clean_social, "drop URLs, @mentions, and #hashtags before tokenizing");
    o.depth_opt = cmd->add_option("--depth-cutoff", o.depth_cutoff,
                                  "keep ancestors at most this many hops above a disambiguated sense");
}

std::optional<std::size_t> depth_cutoff_of(const WsdOptions& o) {
    if (o.depth_opt && o.depth_opt->count() > 0) return o.depth_cutoff;
    return std::nullopt;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"semantic feature vectors over a hypernym taxonomy"};
    app.require_subcommand(1);

    auto add_sub = [&app](const std::string& name, const std::string& desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->option_defaults()->always_capture_default(true);
        return cmd;
    };

    // fit
    CLI::App* fit_cmd = add_sub("fit", "fit a model on a corpus and write the training feature matrix");
    CorpusOptions fit_corpus;
    WsdOptions fit_wsd;
    std::string fit_taxonomy, fit_heuristic = "rarest", fit_model_path, fit_matrix_path;
    std::size_t fit_d = 0, fit_ppr_max_iter = 1000;
    double fit_k = 0.5, fit_ppr_alpha = 0.85, fit_ppr_tol = 1e-9;
    add_corpus_flags(fit_cmd, fit_corpus);
    add_wsd_flags(fit_cmd, fit_wsd);
    fit_cmd->add_option("--taxonomy", fit_taxonomy, "portable taxonomy file")
        ->required()
        ->check(CLI::ExistingFile);
    fit_cmd->add_option("--heuristic", fit_heuristic, "feature selection heuristic")
        ->check(CLI::IsMember({"rarest", "betweenness", "closeness", "mutual_info", "pagerank"}));
    fit_cmd->add_option("-d,--features", fit_d, "number of features to select")
        ->required()
        ->check(kPositiveInt);
    fit_cmd->add_option("-k,--norm-k", fit_k, "double-normalization constant")
        ->check(CLI::Range(0.0, 1.0));
    fit_cmd->add_option("--ppr-alpha", fit_ppr_alpha, "walk probability for pagerank selection");
    fit_cmd->add_option("--ppr-tol", fit_ppr_tol, "pagerank L1 convergence threshold")
        ->check(CLI::PositiveNumber);
    fit_cmd->add_option("--ppr-max-iter", fit_ppr_max_iter, "pagerank iteration cap")
        ->check(kPositiveInt);
    fit_cmd->add_option("--model", fit_model_path, "output model JSON path")->required();
    fit_cmd->add_option("--matrix", fit_matrix_path, "output matrix path (sidecar written alongside)")
        ->required();

    // transform
    CLI::App* tr_cmd = add_sub("transform", "project new documents into a fitted model's feature space");
    CorpusOptions tr_corpus;
    std::string tr_model_path, tr_taxonomy, tr_matrix_path;
    add_corpus_flags(tr_cmd, tr_corpus);
    tr_cmd->add_option("--model", tr_model_path, "fitted model JSON")->required()->check(CLI::ExistingFile);
    tr_cmd->add_option("--taxonomy", tr_taxonomy, "portable taxonomy file (must match the model's)")
        ->required()
        ->check(CLI::ExistingFile);
    tr_cmd->add_option("--matrix", tr_matrix_path, "output matrix path (sidecar written alongside)")
        ->required();

    // inspect
    CLI::App* insp_cmd = add_sub("inspect", "list a model's selected terms with their scores");
    std::string insp_model_path, insp_output;
    insp_cmd->add_option("--model", insp_model_path, "fitted model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    insp_cmd->add_option("--output", insp_output, "output TSV path (default: standard output)");

    // stats
    CLI::App* stats_cmd = add_sub("stats", "export corpus-graph frequency and component tables");
    CorpusOptions stats_corpus;
    WsdOptions stats_wsd;
    std::string stats_taxonomy, stats_freq_path, stats_comp_path;
    add_corpus_flags(stats_cmd, stats_corpus);
    add_wsd_flags(stats_cmd, stats_wsd);
    stats_cmd->add_option("--taxonomy", stats_taxonomy, "portable taxonomy file")
        ->required()
        ->check(CLI::ExistingFile);
    stats_cmd->add_option("--frequencies", stats_freq_path,
                          "output TSV for per-term counts (default: standard output)");
    stats_cmd->add_option("--components", stats_comp_path, "output TSV for connected components");

    // convert-wndb
    CLI::App* wndb_cmd = add_sub("convert-wndb", "convert WordNet database files to the portable format");
    std::string wndb_input, wndb_output;
    wndb_cmd->add_option("--input", wndb_input, "directory with data.* and index.* files")
        ->required()
        ->check(CLI::ExistingDirectory);
    wndb_cmd->add_option("--output", wndb_output, "output taxonomy path (default: standard output)");

    // split-paragraphs
    CLI::App* split_cmd = add_sub("split-paragraphs", "split a text file into one paragraph per line");
    std::string split_input, split_output;
    split_cmd->add_option("--input", split_input, "input text file")->required()->check(CLI::ExistingFile);
    split_cmd->add_option("--output", split_output, "output path (default: standard output)");

    // concat
    CLI::App* concat_cmd = add_sub("concat", "append semantic feature columns to an external matrix");
    std::string concat_semantic, concat_external, concat_output;
    concat_cmd->add_option("--semantic", concat_semantic, "semantic matrix path (sidecar read alongside)")
        ->required()
        ->check(CLI::ExistingFile);
    concat_cmd->add_option("--external", concat_external, "external matrix path (sidecar read alongside)")
        ->required()
        ->check(CLI::ExistingFile);
    concat_cmd->add_option("--output", concat_output, "output matrix path (sidecar written alongside)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (fit_cmd->parsed()) {
            if (fit_heuristic == "mutual_info" && !fit_corpus.labeled) {
                std::cerr << "error: --heuristic mutual_info needs class labels; read them with --labeled\n";
                return 1;
            }
            if (!(fit_ppr_alpha > 0.0 && fit_ppr_alpha < 1.0)) {
                std::cerr << "error: --ppr-alpha must lie strictly between 0 and 1\n";
                return 1;
            }
            PipelineConfig config;
            config.k = fit_k;
            config.selection.heuristic = parse_heuristic(fit_heuristic);
            config.selection.d = fit_d;
            config.selection.ppr_alpha = fit_ppr_alpha;
            config.selection.ppr_tol = fit_ppr_tol;
            config.selection.ppr_max_iter = fit_ppr_max_iter;
            config.wsd.window = fit_wsd.window;
            config.wsd.clean_social = fit_wsd.clean_social;
            config.depth_cutoff = depth_cutoff_of(fit_wsd);
            config.workers = fit_corpus.workers;
            if (!fit_corpus.stopwords.empty()) config.wsd.stopwords = load_stopwords(fit_corpus.stopwords);

            Taxonomy taxonomy = load_portable_taxonomy(fit_taxonomy);
            CorpusFile corpus = read_corpus_file(fit_corpus.corpus, fit_corpus.labeled);
            FitResult result = fit(corpus.texts, corpus.labels, taxonomy, config);
            if (result.model.terms.empty()) {
                std::cerr << "warning: no corpus words mapped into the taxonomy; the model has 0 terms\n";
            }
            std::ofstream model_out = open_output(fit_model_path);
            save_model(result.model, model_out);
            write_matrix_files(result.matrix, fit_matrix_path);
            return 0;
        }

        if (tr_cmd->parsed()) {
            FittedModel model = load_model_file(tr_model_path);
            if (!tr_corpus.stopwords.empty()) model.config.wsd.stopwords = load_stopwords(tr_corpus.stopwords);
            Taxonomy taxonomy = load_portable_taxonomy(tr_taxonomy);
            CorpusFile corpus = read_corpus_file(tr_corpus.corpus, tr_corpus.labeled);
            FeatureMatrix matrix = transform(model, corpus.texts, taxonomy, tr_corpus.workers);
            write_matrix_files(matrix, tr_matrix_path);
            return 0;
        }

        if (insp_cmd->parsed()) {
            FittedModel model = load_model_file(insp_model_path);
            std::ofstream file;
            if (!insp_output.empty()) file = open_output(insp_output);
            std::ostream& out = insp_output.empty() ? std::cout : file;
            out << "term_id\theuristic\tscore\n";
            for (const ModelTerm& term : model.terms) {
                out << term.id << '\t' << heuristic_name(model.config.selection.heuristic) << '\t'
                    << format_double(term.score) << '\n';
            }
            return 0;
        }

        if (stats_cmd->parsed()) {
            WsdConfig wsd;
            wsd.window = stats_wsd.window;
            wsd.clean_social = stats_wsd.clean_social;
            if (!stats_corpus.stopwords.empty()) wsd.stopwords = load_stopwords(stats_corpus.stopwords);
            Taxonomy taxonomy = load_portable_taxonomy(stats_taxonomy);
            CorpusFile corpus = read_corpus_file(stats_corpus.corpus, stats_corpus.labeled);
            std::vector<DocumentTaxonomy> docs = map_documents(
                corpus.texts, taxonomy, wsd, depth_cutoff_of(stats_wsd), stats_corpus.workers);
            CorpusGraph graph = merge(docs, corpus.texts.size());
            if (!stats_freq_path.empty()) {
                std::ofstream out = open_output(stats_freq_path);
                write_frequency_tsv(frequency_table(graph), out);
            }
            if (!stats_comp_path.empty()) {
                std::ofstream out = open_output(stats_comp_path);
                write_components_tsv(components(graph), out);
            }
            if (stats_freq_path.empty() && stats_comp_path.empty()) {
                write_frequency_tsv(frequency_table(graph), std::cout);
            }
            return 0;
        }

        if (wndb_cmd->parsed()) {
            if (!wndb_output.empty()) {
                std::ofstream out = open_output(wndb_output);
                convert_wndb(wndb_input, out);
            } else {
                convert_wndb(wndb_input, std::cout);
            }
            return 0;
        }

        if (split_cmd->parsed()) {
            std::ifstream in(split_input, std::ios::binary);
            if (!in) throw Error("cannot open \"" + split_input + "\"");
            std::vector<std::string> paragraphs = split_paragraphs(in);
            std::ofstream file;
            if (!split_output.empty()) file = open_output(split_output);
            std::ostream& out = split_output.empty() ? std::cout : file;
            for (const std::string& p : paragraphs) out << p << '\n';
            return 0;
        }

        if (concat_cmd->parsed()) {
            FeatureMatrix semantic = read_matrix_files(concat_semantic);
            FeatureMatrix external = read_matrix_files(concat_external);
            write_matrix_files(concat(semantic, external), concat_output);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace taxvec
