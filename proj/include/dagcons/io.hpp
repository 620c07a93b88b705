#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dagcons/dag.hpp"
#include "dagcons/mdi.hpp"
#include "dagcons/transform.hpp"

namespace dagcons {

struct ParsedDag {
    Dag dag;
    CardinalityMap cards;
};

/// Line-oriented format: `node <name> <cardinality>` declarations followed by
/// `arc <tail> <head>` lines; `#` starts a comment. Declaration order defines
/// the identity ordering.
ParsedDag parse_dag(const std::string& text);

/// Canonical form: nodes in declaration order, arcs sorted by
/// (tail position, head position).
std::string serialize_dag(const Dag& g, const CardinalityMap& cards);

/// Whitespace-separated node names, one occurrence of every node.
NodeOrder parse_order(const std::string& text, const Dag& g);
std::string serialize_order(const NodeOrder& order, const Dag& g);

/// "ADD a b" / "REVERSE a b" / "SWAP a b" lines, names from `g`.
std::string serialize_steps(const StepLog& log, const Dag& g);
/// "ADD a b" / "REVERSE a b" lines, names from the trace's start graph.
std::string serialize_trace(const TransformTrace& tr);

/// Command-line entry point; args exclude the program name. Writes result
/// data to `out` and diagnostics to `err`. Returns 0 on success, 1 when a
/// verification-style command answers no, 2 on input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dagcons
