// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace reprokit {

// Four equally weighted components, each in [0, 1]:
//   ngram          smoothed token 4-gram precision with brevity penalty
//   weighted_ngram same, with n-grams containing a reserved word weighted 4x
//   syntax         fraction of reference AST subtrees (depth >= 1) found in
//                  the candidate by structural hashing; variable identifier
//                  spellings at leaves are ignored
//   dataflow       fraction of reference def-use edges present in the
//                  candidate under positional variable renaming
// An unparseable candidate contributes 0 to syntax and dataflow.
struct CodeBleuBreakdown {
    double ngram = 0.0;
    double weighted_ngram = 0.0;
    double syntax = 0.0;
    double dataflow = 0.0;
    double total = 0.0;
};

// The reference must parse (InvalidReference otherwise); the candidate may
// be arbitrary text.
CodeBleuBreakdown codebleu(const std::string& candidate, const std::string& reference);

} // namespace reprokit
