// SPDX-License-Identifier: Apache-2.0
#include "reprokit/metrics/codebleu.hpp"

#include "reprokit/errors.hpp"
#include "reprokit/py/parser.hpp"
#include "reprokit/py/token.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace reprokit {

namespace {

using py::AstNode;
using py::NodeKind;

// ---- n-gram components ------------------------------------------------------

using Ngram = std::vector<std::string>;

std::map<Ngram, int> ngram_counts(const std::vector<std::string>& tokens, size_t n) {
    std::map<Ngram, int> counts;
    if (tokens.size() < n) return counts;
    for (size_t i = 0; i + n <= tokens.size(); ++i)
        ++counts[Ngram(tokens.begin() + i, tokens.begin() + i + n)];
    return counts;
}

double ngram_weight(const Ngram& gram, bool weighted) {
    if (!weighted) return 1.0;
    for (const auto& tok : gram)
        if (py::is_python_keyword(tok)) return 4.0;
    return 1.0;
}

// Smoothed modified precision: (matched + 1) / (total + 1) for n >= 2; the
// unigram precision is exact so disjoint token sets still score 0.
double bleu(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
            bool weighted) {
    if (cand.empty() || ref.empty()) return 0.0;
    double log_sum = 0.0;
    for (size_t n = 1; n <= 4; ++n) {
        auto cand_counts = ngram_counts(cand, n);
        auto ref_counts = ngram_counts(ref, n);
        double matched = 0.0;
        double total = 0.0;
        for (const auto& [gram, count] : cand_counts) {
            double w = ngram_weight(gram, weighted);
            total += w * count;
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) matched += w * std::min(count, it->second);
        }
        double p;
        if (n == 1) {
            p = total > 0.0 ? matched / total : 0.0;
            if (p <= 0.0) return 0.0;
        } else {
            p = (matched + 1.0) / (total + 1.0);
        }
        log_sum += 0.25 * std::log(p);
    }
    double bp = 1.0;
    if (cand.size() < ref.size())
        bp = std::exp(1.0 - static_cast<double>(ref.size()) / static_cast<double>(cand.size()));
    return bp * std::exp(log_sum);
}

// ---- AST subtree component --------------------------------------------------

uint64_t fnv1a(uint64_t h, const void* data, size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

uint64_t mix(uint64_t h, uint64_t v) { return fnv1a(h, &v, sizeof v); }

// Structural hash; Name and parameter identifiers hash as empty so a
// consistent variable renaming leaves every subtree hash unchanged.
// Attribute, keyword-argument and definition names stay significant.
uint64_t subtree_hash(const AstNode& node, std::multiset<uint64_t>* sink) {
    uint64_t h = 1469598103934665603ULL;
    h = mix(h, static_cast<uint64_t>(node.kind));
    bool anonymize = node.kind == NodeKind::Name || node.kind == NodeKind::Param ||
                     node.kind == NodeKind::StarParam || node.kind == NodeKind::DoubleStarParam;
    if (!anonymize) h = fnv1a(h, node.text.data(), node.text.size());
    for (const auto& child : node.children) h = mix(h, subtree_hash(child, sink));
    if (sink && !node.children.empty()) sink->insert(h);
    return h;
}

// ---- data-flow component ----------------------------------------------------

// Def-use edge, positionally renamed: for every binding statement, the
// target variable draws an edge from each variable read on its value side.
struct DfgExtractor {
    std::map<std::string, int> ordinal;
    std::multiset<std::pair<int, int>> edges;

    int norm(const std::string& name) {
        auto [it, inserted] = ordinal.try_emplace(name, static_cast<int>(ordinal.size()));
        return it->second;
    }

    void value_names(const AstNode& n, std::vector<std::string>& out) {
        if (n.kind == NodeKind::Name) {
            out.push_back(n.text);
            return;
        }
        if (n.kind == NodeKind::Attribute) {
            value_names(n.children[0], out);
            return;
        }
        if (n.kind == NodeKind::Annotation || n.kind == NodeKind::ReturnAnnotation) return;
        for (const auto& c : n.children) value_names(c, out);
    }

    void target_names(const AstNode& n, std::vector<std::string>& out) {
        switch (n.kind) {
            case NodeKind::Name:
                out.push_back(n.text);
                return;
            case NodeKind::Tuple:
            case NodeKind::List:
            case NodeKind::Starred:
                for (const auto& c : n.children) target_names(c, out);
                return;
            case NodeKind::Attribute:
            case NodeKind::Subscript: {
                const AstNode* cur = &n;
                while (cur->kind == NodeKind::Attribute || cur->kind == NodeKind::Subscript)
                    cur = &cur->children[0];
                if (cur->kind == NodeKind::Name) out.push_back(cur->text);
                return;
            }
            default:
                return;
        }
    }

    void bind(const AstNode& target, const AstNode& value) {
        std::vector<std::string> targets, sources;
        target_names(target, targets);
        value_names(value, sources);
        for (const auto& t : targets) {
            int tn = norm(t);
            for (const auto& s : sources) edges.insert({tn, norm(s)});
        }
    }

    void walk(const AstNode& n) {
        switch (n.kind) {
            case NodeKind::Assign:
                for (size_t i = 0; i + 1 < n.children.size(); ++i)
                    bind(n.children[i], n.children.back());
                break;
            case NodeKind::AugAssign: {
                bind(n.children[0], n.children[1]);
                std::vector<std::string> t;
                target_names(n.children[0], t);
                for (const auto& name : t) {
                    int o = norm(name);
                    edges.insert({o, o});  // augmented targets read themselves
                }
                break;
            }
            case NodeKind::AnnAssign:
                if (n.children.size() > 2) bind(n.children[0], n.children[2]);
                break;
            case NodeKind::NamedExpr:
                bind(n.children[0], n.children[1]);
                break;
            case NodeKind::For:
            case NodeKind::AsyncFor:
                bind(n.children[0], n.children[1]);
                break;
            case NodeKind::WithItem:
                if (n.children.size() > 1) bind(n.children[1], n.children[0]);
                break;
            case NodeKind::CompFor:
                bind(n.children[0], n.children[1]);
                break;
            default:
                break;
        }
        // establish first-appearance ordinals in document order as well
        if (n.kind == NodeKind::Name) norm(n.text);
        if (n.kind == NodeKind::Param || n.kind == NodeKind::StarParam ||
            n.kind == NodeKind::DoubleStarParam)
            if (!n.text.empty()) norm(n.text);
        for (const auto& c : n.children) walk(c);
    }
};

std::multiset<std::pair<int, int>> dfg_edges(const AstNode& tree) {
    DfgExtractor ex;
    ex.walk(tree);
    return std::move(ex.edges);
}

template <typename T>
double multiset_recall(const std::multiset<T>& ref, const std::multiset<T>& cand) {
    if (ref.empty()) return 1.0;  // vacuously complete
    size_t matched = 0;
    for (auto it = ref.begin(); it != ref.end();) {
        auto next = ref.upper_bound(*it);
        size_t ref_count = static_cast<size_t>(std::distance(it, next));
        size_t cand_count = cand.count(*it);
        matched += std::min(ref_count, cand_count);
        it = next;
    }
    return static_cast<double>(matched) / static_cast<double>(ref.size());
}

}  // namespace

CodeBleuBreakdown codebleu(const std::string& candidate, const std::string& reference) {
    AstNode ref_tree;
    try {
        ref_tree = py::parse_python(reference);
    } catch (const ParseError& e) {
        throw InvalidReference(std::string("reference does not parse: ") + e.what());
    }

    CodeBleuBreakdown out;
    std::vector<std::string> cand_tokens = py::lenient_tokens(candidate);
    std::vector<std::string> ref_tokens = py::lenient_tokens(reference);
    if (cand_tokens.empty() && !ref_tokens.empty()) return out;  // all zeros
    if (cand_tokens.empty() && ref_tokens.empty()) {
        out.ngram = out.weighted_ngram = out.syntax = out.dataflow = out.total = 1.0;
        return out;
    }
    out.ngram = bleu(cand_tokens, ref_tokens, false);
    out.weighted_ngram = bleu(cand_tokens, ref_tokens, true);

    std::optional<AstNode> cand_tree;
    try {
        cand_tree = py::parse_python(candidate);
    } catch (const ParseError&) {
        cand_tree.reset();
    }

    if (cand_tree) {
        std::multiset<uint64_t> ref_subtrees, cand_subtrees;
        subtree_hash(ref_tree, &ref_subtrees);
        subtree_hash(*cand_tree, &cand_subtrees);
        out.syntax = multiset_recall(ref_subtrees, cand_subtrees);
        out.dataflow = multiset_recall(dfg_edges(ref_tree), dfg_edges(*cand_tree));
    }

    out.total = 0.25 * (out.ngram + out.weighted_ngram + out.syntax + out.dataflow);
    return out;
}

} // namespace reprokit
