#pragma once

#include <string>
#include <vector>

#include "dagcons/dag.hpp"

namespace dagcons {

struct TransformStep {
    enum class Kind { add, reverse_covered };
    Kind kind;
    Arc arc;
    friend bool operator==(const TransformStep&, const TransformStep&) = default;
};

/// Ordered record of a transformation by arc additions and covered arc
/// reversals; every intermediate graph is acyclic and an independence
/// superset of the target.
struct TransformTrace {
    Dag start;
    Dag end;
    std::vector<TransformStep> steps;
};

/// Transforms g into h when I(h) is contained in I(g): percolates g to its
/// minimal map relative to an ordering consistent with h, then adds the arcs
/// of h still missing. Throws NotAnIMapError otherwise.
TransformTrace g2h(const Dag& g, const Dag& h);

struct TraceValidation {
    bool ok = true;
    int failed_step = -1;  // index into steps, or steps.size() for end-state failures
    std::string reason;
    explicit operator bool() const { return ok; }
};

/// Replays a trace and checks, after every step: acyclicity, covered-ness of
/// reversed arcs at application time, and that h remains an I-map of the
/// intermediate graph; finally that the end state equals h.
TraceValidation validate_trace(const TransformTrace& tr, const Dag& h);

}  // namespace dagcons
