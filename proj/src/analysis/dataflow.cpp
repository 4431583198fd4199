// SPDX-License-Identifier: Apache-2.0
#include "reprokit/analysis/dataflow.hpp"

namespace reprokit {

DataflowFacts def_use_chains(const std::vector<Segment>& segments) {
    DataflowFacts facts;
    std::map<std::string, int> last_writer;
    for (const auto& seg : segments) {
        for (const auto& var : seg.uses) {
            auto it = last_writer.find(var);
            if (it != last_writer.end() && it->second < seg.index)
                facts.provenance[{seg.index, var}] = it->second;
            else
                facts.external_reads.insert({seg.index, var});
        }
        for (const auto& var : seg.defs) last_writer[var] = seg.index;
    }
    return facts;
}

} // namespace reprokit
