#include "taxvec/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "taxvec/error.hpp"

namespace taxvec {

DocumentTaxonomy build_document_taxonomy(const std::vector<Token>& tokens, const Taxonomy& taxonomy,
                                         const WsdConfig& config,
                                         std::optional<std::size_t> depth_cutoff, std::size_t doc_id) {
    DocumentTaxonomy doc;
    doc.counts.doc_id = doc_id;

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!tokens[i].content) continue;
        std::optional<std::string> sense = lesk_disambiguate(tokens, i, taxonomy, config);
        if (!sense) continue;
        doc.seeds.insert(*sense);
        for (const auto& [term, distance] : hypernym_closure_with_distance(taxonomy, *sense)) {
            if (depth_cutoff && distance > *depth_cutoff) continue;
            doc.counts.counts[term] += 1;
            doc.nodes.insert(term);
        }
    }

    for (const std::string& node : doc.nodes) {
        for (const std::string& parent : taxonomy.at(node).hypernyms) {
            if (doc.nodes.count(parent)) doc.edges.emplace(node, parent);
        }
    }
    return doc;
}

CorpusGraph merge(const std::vector<DocumentTaxonomy>& docs, std::size_t n_docs) {
    std::vector<bool> seen(n_docs, false);
    for (const DocumentTaxonomy& doc : docs) {
        if (doc.counts.doc_id >= n_docs) {
            throw Error("doc_id " + std::to_string(doc.counts.doc_id) + " out of range for " +
                        std::to_string(n_docs) + " documents");
        }
        if (seen[doc.counts.doc_id]) {
            throw Error("duplicate doc_id " + std::to_string(doc.counts.doc_id));
        }
        seen[doc.counts.doc_id] = true;
    }
    if (docs.size() != n_docs) {
        throw Error("expected " + std::to_string(n_docs) + " documents, got " + std::to_string(docs.size()));
    }

    CorpusGraph graph;
    graph.n_docs = n_docs;
    for (const DocumentTaxonomy& doc : docs) {
        graph.nodes.insert(doc.nodes.begin(), doc.nodes.end());
        graph.edges.insert(doc.edges.begin(), doc.edges.end());
        graph.seed_terms.insert(doc.seeds.begin(), doc.seeds.end());
        for (const auto& [term, count] : doc.counts.counts) {
            graph.total_counts[term] += count;
            graph.doc_freq[term] += 1;
        }
    }
    return graph;
}

std::vector<DocumentTaxonomy> map_documents(const std::vector<std::string>& documents,
                                            const Taxonomy& taxonomy, const WsdConfig& config,
                                            std::optional<std::size_t> depth_cutoff, std::size_t workers) {
    std::vector<DocumentTaxonomy> results(documents.size());
    if (documents.empty()) return results;

    std::size_t n_threads = std::max<std::size_t>(1, std::min(workers, documents.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try {
            for (std::size_t i = next.fetch_add(1); i < documents.size(); i = next.fetch_add(1)) {
                std::vector<Token> tokens = tokenize(documents[i], config);
                results[i] = build_document_taxonomy(tokens, taxonomy, config, depth_cutoff, i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

CorpusFile read_corpus_tsv(std::istream& in, bool labeled) {
    CorpusFile corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (labeled) {
            std::size_t tab = line.find('\t');
            if (tab == std::string::npos) {
                throw Error("corpus line " + std::to_string(line_no) + ": expected label<TAB>text");
            }
            corpus.labels.push_back(line.substr(0, tab));
            corpus.texts.push_back(line.substr(tab + 1));
        } else {
            corpus.texts.push_back(line);
        }
    }
    return corpus;
}

std::vector<std::string> split_paragraphs(std::istream& in) {
    std::vector<std::string> paragraphs;
    std::string current;
    std::string line;
    auto flush = [&] {
        if (!current.empty()) paragraphs.push_back(std::move(current));
        current.clear();
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) {
            flush();
            continue;
        }
        if (!current.empty()) current += ' ';
        current += line;
    }
    flush();
    return paragraphs;
}

}  // namespace taxvec
