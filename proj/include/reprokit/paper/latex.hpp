// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace reprokit {

enum class SectionLevel { Section = 1, Subsection = 2, Paragraph = 3 };

struct SectionNode {
    std::string label;  // from a leading \label{...}, else synthesized ("section-2")
    SectionLevel level = SectionLevel::Section;
    std::string title;
    size_t heading_begin = 0;  // offsets into the source
    size_t heading_end = 0;    // one past the sectioning command
};

// Flat, document-ordered view of the sectioning structure; bodies are
// slices of the original source, so reconstruction is lossless.
struct SectionTree {
    std::string source;
    std::vector<SectionNode> nodes;

    // text before the first sectioning command (the whole document when
    // there are no sections)
    std::string preamble() const;
    // node's own text, up to the next sectioning command of any level
    std::string own_body(size_t i) const;
    // node's full region: own text plus nested lower-level sections
    std::string region(size_t i) const;

    bool has_label(const std::string& label) const;
};

// Structural scan for \section / \subsection / \subsubsection / \paragraph
// (starred forms included). Never fails: malformed input degrades to a
// sectionless tree. A \label{...} that immediately follows the heading
// names the node; otherwise a positional label is synthesized. Labels are
// unique within the tree.
SectionTree parse_latex(const std::string& source);

// Full region text for a label; throws NotFound.
std::string get_section(const SectionTree& tree, const std::string& label);

// Extraction granularity: one unit per subsection; sections without
// subsections are fed whole.
struct SectionUnit {
    std::string label;
    std::string text;
};
std::vector<SectionUnit> extraction_units(const SectionTree& tree);

} // namespace reprokit
