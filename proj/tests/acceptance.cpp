// Acceptance gate: every release criterion in one binary, one verdict line
// each, nonzero exit when anything fails. No test framework so the output
// stays greppable in CI logs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "taxvec/cli.hpp"
#include "taxvec/pipeline.hpp"
#include "taxvec/selection.hpp"
#include "taxvec/taxonomy.hpp"
#include "taxvec/wndb.hpp"

using namespace taxvec;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void verdict(int number, bool ok, const std::string& label) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", number, label.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", s);
    return buf;
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "taxvec_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> strings{"taxvec"};
    strings.insert(strings.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(strings.size());
    for (const std::string& s : strings) argv.push_back(s.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

std::string matrix_bytes(const FeatureMatrix& m) {
    std::ostringstream market, sidecar;
    write_matrix_market(m, market);
    write_matrix_sidecar(m, sidecar);
    return market.str() + sidecar.str();
}

Taxonomy animals_taxonomy() {
    std::istringstream in(
        "entity.n.01\tn\tentity\tthat which exists\t\t\n"
        "animal.n.01\tn\tanimal\ta living organism\t\tentity.n.01\n"
        "dog.n.01\tn\tdog\ta domesticated canid\t\tanimal.n.01\n"
        "cat.n.01\tn\tcat\ta feline mammal\t\tanimal.n.01\n"
        "horse.n.01\tn\thorse\ta hoofed mammal\t\tanimal.n.01\n");
    return parse_portable_taxonomy(in);
}

// One corpus line per document, words drawn from the taxonomy generator's
// vocabulary so every token maps to a synset.
std::string random_corpus_tsv(std::mt19937& rng, std::size_t n_docs, std::size_t vocab) {
    std::uniform_int_distribution<std::size_t> len(5, 12);
    std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
    std::ostringstream out;
    for (std::size_t i = 0; i < n_docs; ++i) {
        std::size_t n = len(rng);
        for (std::size_t w = 0; w < n; ++w) {
            if (w) out << ' ';
            out << oracles::word_name(word(rng));
        }
        out << '\n';
    }
    return out.str();
}

// ---- 1: hypernym chain through the full WordNet database -------------------

void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    std::string label = "astatine hypernym chain through converted WordNet";
    try {
        std::stringstream portable;
        convert_wndb(TAXVEC_WORDNET_DIR, portable);
        Taxonomy tax = parse_portable_taxonomy(portable);

        std::vector<std::string> closure = hypernym_closure(tax, "astatine.n.01");
        std::set<std::string> ancestors(closure.begin(), closure.end());
        const std::vector<std::string> chain{"astatine.n.01",    "chemical_element.n.01",
                                             "substance.n.01",   "part.n.01",
                                             "relation.n.01",    "abstraction.n.06",
                                             "entity.n.01"};
        bool ok = true;
        for (const std::string& id : chain) ok = ok && ancestors.count(id) == 1;
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            const std::vector<std::string>& parents = tax.at(chain[i]).hypernyms;
            ok = ok && std::find(parents.begin(), parents.end(), chain[i + 1]) != parents.end();
        }
        double elapsed = seconds_since(start);
        ok = ok && elapsed < 30.0;
        verdict(1, ok, label + " (" + format_seconds(elapsed) + "s, limit 30s)");
    } catch (const std::exception& e) {
        verdict(1, false, label + " (exception: " + e.what() + ")");
    }
}

// ---- 2: hand-computed weighting fixture ------------------------------------

void criterion_2() {
    std::string label = "toy corpus weights match hand-computed values at 1e-12";
    try {
        Taxonomy tax = animals_taxonomy();
        PipelineConfig config;
        config.selection.d = 100;
        FitResult result = fit({"dog dog cat horse", "xyzzy"}, {}, tax, config);

        // Doc 0: counts dog 2, cat 1, horse 1, animal 4, entity 4; f_max = 4;
        // every n_t = 1 over N = 2 so idf = ln 2 throughout. Doc 1 is empty.
        const double ln2 = std::log(2.0);
        std::map<std::string, double> expected{{"animal.n.01", ln2},
                                               {"entity.n.01", ln2},
                                               {"dog.n.01", 0.75 * ln2},
                                               {"cat.n.01", 0.625 * ln2},
                                               {"horse.n.01", 0.625 * ln2}};
        bool ok = result.matrix.entries.size() == expected.size();
        for (const MatrixEntry& e : result.matrix.entries) {
            ok = ok && e.row == 0 &&
                 std::abs(e.value - expected.at(result.matrix.columns[e.col])) <= 1e-12;
        }
        verdict(2, ok, label);
    } catch (const std::exception& e) {
        verdict(2, false, label + " (exception: " + e.what() + ")");
    }
}

// ---- 3: centrality and walk scores against dense oracles -------------------

// Residual of the stationary equation, rebuilt here from scratch so the
// check does not share code with the implementation.
double walk_residual(const CorpusGraph& g, const std::map<std::string, double>& pi, double alpha) {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [child, parent] : g.edges) out[child].push_back(parent);

    double dangling = 0.0;
    for (const std::string& id : g.nodes) {
        if (out.find(id) == out.end()) dangling += pi.at(id);
    }
    double v = 1.0 / static_cast<double>(g.seed_terms.size());

    double worst = 0.0;
    for (const std::string& j : g.nodes) {
        double in_mass = 0.0;
        for (const auto& [i, targets] : out) {
            std::size_t hits = std::count(targets.begin(), targets.end(), j);
            if (hits) in_mass += pi.at(i) * static_cast<double>(hits) / targets.size();
        }
        double restart = g.seed_terms.count(j) ? v : 0.0;
        double next = alpha * (in_mass + dangling * restart) + (1.0 - alpha) * restart;
        worst = std::max(worst, std::abs(next - pi.at(j)));
    }
    return worst;
}

void criterion_3() {
    std::string label = "centrality and walk scores match oracles on 200 random graphs";
    try {
        std::mt19937 rng(301);
        SelectionConfig config;
        config.ppr_tol = 1e-12;
        bool ok = true;
        for (int trial = 0; trial < 200 && ok; ++trial) {
            CorpusGraph g = oracles::random_dag_graph(rng);

            std::map<std::string, double> bc, cl, pi;
            for (const ScoredTerm& t : select_betweenness(g, g.nodes.size())) bc[t.id] = t.score;
            for (const ScoredTerm& t : select_closeness(g, g.nodes.size())) cl[t.id] = t.score;
            for (const ScoredTerm& t : select_pagerank(g, g.nodes.size(), config)) pi[t.id] = t.score;

            std::map<std::string, double> bc_oracle = oracles::betweenness_oracle(g);
            std::map<std::string, double> cl_oracle = oracles::closeness_oracle(g);
            std::map<std::string, double> pi_oracle = oracles::ppr_oracle(g, config.ppr_alpha);

            double mass = 0.0;
            for (const std::string& id : g.nodes) {
                ok = ok && std::abs(bc.at(id) - bc_oracle.at(id)) <= 1e-9;
                ok = ok && std::abs(cl.at(id) - cl_oracle.at(id)) <= 1e-9;
                ok = ok && std::abs(pi.at(id) - pi_oracle.at(id)) <= 1e-8;
                mass += pi.at(id);
            }
            ok = ok && std::abs(mass - 1.0) <= 1e-8;
            ok = ok && walk_residual(g, pi, config.ppr_alpha) <= 1e-8;
        }
        verdict(3, ok, label);
    } catch (const std::exception& e) {
        verdict(3, false, label + " (exception: " + e.what() + ")");
    }
}

// ---- 4: mutual information against the joint-table oracle ------------------

void criterion_4() {
    std::string label = "mutual information matches the joint-table oracle on 200 matrices";
    try {
        std::mt19937 rng(401);
        std::uniform_int_distribution<int> bit(0, 1);
        std::uniform_int_distribution<int> n_classes_dist(2, 4);
        bool ok = true;
        for (int trial = 0; trial < 200 && ok; ++trial) {
            const std::size_t rows = 8, cols = 5;
            // Column 0 is all ones and column 1 all zeros: both must score
            // exactly 0. The rest are random.
            std::vector<std::vector<int>> binary(rows, std::vector<int>(cols, 0));
            FeatureMatrix m;
            m.n_rows = rows;
            for (std::size_t c = 0; c < cols; ++c) m.columns.push_back("col" + std::to_string(c));
            for (std::size_t r = 0; r < rows; ++r) {
                binary[r][0] = 1;
                m.entries.push_back({r, 0, 1.0});
                for (std::size_t c = 2; c < cols; ++c) {
                    binary[r][c] = bit(rng);
                    if (binary[r][c]) m.entries.push_back({r, c, 1.0});
                }
            }
            std::sort(m.entries.begin(), m.entries.end(), [](const auto& a, const auto& b) {
                return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

            int n_classes = n_classes_dist(rng);
            std::uniform_int_distribution<int> cls(0, n_classes - 1);
            std::vector<std::string> labels;
            do {
                labels.clear();
                for (std::size_t r = 0; r < rows; ++r) {
                    labels.push_back("c" + std::to_string(cls(rng)));
                }
            } while (std::set<std::string>(labels.begin(), labels.end()).size() < 2);

            auto oracle = oracles::mi_oracle(binary, labels);
            std::map<std::string, double> got;
            for (const ScoredTerm& t : select_mutual_info(m, labels, cols)) got[t.id] = t.score;

            ok = ok && got.at("col0") == 0.0 && got.at("col1") == 0.0;
            for (std::size_t c = 0; c < cols; ++c) {
                double expected = 0.0;
                for (const auto& [cls_name, mi] : oracle[c]) expected += mi;
                ok = ok && std::abs(got.at(m.columns[c]) - expected) <= 1e-12;
            }
        }
        verdict(4, ok, label);
    } catch (const std::exception& e) {
        verdict(4, false, label + " (exception: " + e.what() + ")");
    }
}

// ---- 5: worker count never changes the written files ------------------------

void criterion_5() {
    std::string label = "fit files are byte-identical across 1, 2, and 8 workers";
    try {
        fs::path dir = scratch_dir();
        std::mt19937 rng(501);
        std::string taxonomy = write_file(dir / "taxonomy.tsv", oracles::random_taxonomy_text(rng, 30, 0.15));
        std::string corpus = write_file(dir / "corpus.tsv", random_corpus_tsv(rng, 50, 30));

        std::map<std::string, std::string> model_out, matrix_out, sidecar_out;
        bool ok = true;
        for (const char* workers : {"1", "2", "8"}) {
            std::string model = (dir / (std::string("model") + workers + ".json")).string();
            std::string matrix = (dir / (std::string("matrix") + workers + ".mtx")).string();
            ok = ok && run_cli({"fit", "--corpus", corpus, "--taxonomy", taxonomy, "-d", "10",
                                "--workers", workers, "--model", model, "--matrix", matrix}) == 0;
            model_out[workers] = slurp(model);
            matrix_out[workers] = slurp(matrix);
            sidecar_out[workers] = slurp(matrix + ".json");
        }
        // Guard against a trivial pass: the corpus must have produced terms.
        ok = ok && model_out["1"].find("\"terms\": []") == std::string::npos;
        ok = ok && !matrix_out["1"].empty();
        ok = ok && model_out["1"] == model_out["2"] && model_out["1"] == model_out["8"];
        ok = ok && matrix_out["1"] == matrix_out["2"] && matrix_out["1"] == matrix_out["8"];
        ok = ok && sidecar_out["1"] == sidecar_out["2"] && sidecar_out["1"] == sidecar_out["8"];
        fs::remove_all(dir);
        verdict(5, ok, label);
    } catch (const std::exception& e) {
        verdict(5, false, label + " (exception: " + e.what() + ")");
    }
}

// ---- 6: transform of the training corpus reproduces the fit matrix ----------

void criterion_6() {
    std::string label = "transform(training corpus) equals the fit matrix on 20 corpora";
    try {
        std::mt19937 rng(601);
        std::uniform_int_distribution<std::size_t> n_docs_dist(2, 12);
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            std::istringstream tax_text(oracles::random_taxonomy_text(rng, 12, 0.3));
            Taxonomy tax = parse_portable_taxonomy(tax_text);

            std::istringstream corpus_text(random_corpus_tsv(rng, n_docs_dist(rng), 12));
            CorpusFile corpus = read_corpus_tsv(corpus_text, false);

            PipelineConfig config;
            config.selection.d = 6;
            FitResult fitted = fit(corpus.texts, {}, tax, config);
            FeatureMatrix again = transform(fitted.model, corpus.texts, tax);
            ok = ok && matrix_bytes(fitted.matrix) == matrix_bytes(again);
        }
        verdict(6, ok, label);
    } catch (const std::exception& e) {
        verdict(6, false, label + " (exception: " + e.what() + ")");
    }
}

// ---- 7: selection size and ordering contract --------------------------------

void criterion_7() {
    std::string label = "every heuristic respects min(d, terms) and the tie-break order";
    try {
        std::mt19937 rng(701);
        std::istringstream tax_text(oracles::random_taxonomy_text(rng, 20, 0.25));
        Taxonomy tax = parse_portable_taxonomy(tax_text);

        std::istringstream corpus_text(random_corpus_tsv(rng, 16, 20));
        CorpusFile corpus = read_corpus_tsv(corpus_text, false);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < corpus.texts.size(); ++i) {
            labels.push_back(i % 2 ? "odd" : "even");
        }

        PipelineConfig probe;
        probe.selection.d = 10000;
        std::size_t n_terms = fit(corpus.texts, {}, tax, probe).graph.nodes.size();

        bool ok = n_terms > 5;  // the corpus must exercise all three d regimes
        for (Heuristic h : {Heuristic::rarest, Heuristic::betweenness, Heuristic::closeness,
                            Heuristic::mutual_info, Heuristic::pagerank}) {
            for (std::size_t d : {std::size_t{1}, std::size_t{5}, n_terms + 10}) {
                PipelineConfig config;
                config.selection.heuristic = h;
                config.selection.d = d;
                FitResult result = fit(corpus.texts, labels, tax, config);
                ok = ok && result.model.terms.size() == std::min(d, n_terms);
                ok = ok && result.matrix.columns.size() == result.model.terms.size();
                for (std::size_t i = 1; i < result.model.terms.size(); ++i) {
                    const ModelTerm& a = result.model.terms[i - 1];
                    const ModelTerm& b = result.model.terms[i];
                    ok = ok && (a.score > b.score || (a.score == b.score && a.id < b.id));
                }
            }
        }
        verdict(7, ok, label);
    } catch (const std::exception& e) {
        verdict(7, false, label + " (exception: " + e.what() + ")");
    }
}

// ---- 8: end-to-end speed over a mid-sized synthetic corpus ------------------

void criterion_8() {
    std::string label = "fit + inspect on 100 docs over 50 synsets";
    try {
        fs::path dir = scratch_dir();
        std::mt19937 rng(801);
        std::string taxonomy = write_file(dir / "taxonomy.tsv", oracles::random_taxonomy_text(rng, 50, 0.1));
        std::string corpus = write_file(dir / "corpus.tsv", random_corpus_tsv(rng, 100, 50));
        std::string model = (dir / "model.json").string();
        std::string matrix = (dir / "matrix.mtx").string();
        std::string report = (dir / "terms.tsv").string();

        auto start = std::chrono::steady_clock::now();
        bool ok = run_cli({"fit", "--corpus", corpus, "--taxonomy", taxonomy, "-d", "10",
                           "--workers", "1", "--model", model, "--matrix", matrix}) == 0;
        ok = ok && run_cli({"inspect", "--model", model, "--output", report}) == 0;
        double elapsed = seconds_since(start);

        // Header plus one row per selected term, each row carrying a score.
        std::istringstream lines(slurp(report));
        std::string line;
        std::getline(lines, line);
        ok = ok && line == "term_id\theuristic\tscore";
        std::size_t rows = 0;
        while (std::getline(lines, line)) {
            ++rows;
            std::size_t first = line.find('\t'), last = line.rfind('\t');
            ok = ok && first != std::string::npos && last != first;
            ok = ok && line.substr(last + 1).find_first_not_of("0123456789.eE+-") == std::string::npos;
        }
        ok = ok && rows == 10;
        ok = ok && elapsed < 5.0;
        fs::remove_all(dir);
        verdict(8, ok, label + " (" + format_seconds(elapsed) + "s, limit 5s)");
    } catch (const std::exception& e) {
        verdict(8, false, label + " (exception: " + e.what() + ")");
    }
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures ? 1 : 0;
}
