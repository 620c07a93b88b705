#include "dagcons/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dagcons/consensus.hpp"
#include "dagcons/separation.hpp"

namespace dagcons {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

ParsedDag parse_dag(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    std::vector<std::string> names;
    std::vector<std::uint64_t> cards;
    std::vector<std::pair<std::string, std::string>> arc_names;
    std::vector<int> arc_lines;

    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokenize(strip_comment(line));
        if (toks.empty()) continue;
        if (toks[0] == "node") {
            if (toks.size() != 3) throw ParseError(lineno, "expected: node <name> <cardinality>");
            std::uint64_t card = 0;
            try {
                std::size_t used = 0;
                card = std::stoull(toks[2], &used);
                if (used != toks[2].size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(lineno, "cardinality is not an integer: " + toks[2]);
            }
            if (card < 2) throw ParseError(lineno, "cardinality must be at least 2");
            for (const auto& existing : names)
                if (existing == toks[1])
                    throw DuplicateNodeError("line " + std::to_string(lineno) +
                                             ": duplicate node " + toks[1]);
            names.push_back(toks[1]);
            cards.push_back(card);
        } else if (toks[0] == "arc") {
            if (toks.size() != 3) throw ParseError(lineno, "expected: arc <tail> <head>");
            arc_names.push_back({toks[1], toks[2]});
            arc_lines.push_back(lineno);
        } else {
            throw ParseError(lineno, "unknown directive: " + toks[0]);
        }
    }

    Dag dag(static_cast<int>(names.size()), names);
    for (std::size_t i = 0; i < arc_names.size(); ++i) {
        const auto& [tail, head] = arc_names[i];
        const auto from = dag.index_of(tail);
        const auto to = dag.index_of(head);
        if (!from) throw ParseError(arc_lines[i], "unknown node: " + tail);
        if (!to) throw ParseError(arc_lines[i], "unknown node: " + head);
        if (*from == *to) throw ParseError(arc_lines[i], "self-arc on node " + tail);
        if (dag.has_arc(*from, *to))
            throw ParseError(arc_lines[i], "duplicate arc " + tail + " -> " + head);
        dag.add_arc(*from, *to);
    }
    if (!dag.is_acyclic()) throw CycleError("arc set contains a directed cycle");
    return {std::move(dag), CardinalityMap(std::move(cards))};
}

std::string serialize_dag(const Dag& g, const CardinalityMap& cards) {
    if (cards.size() != g.node_count())
        throw NodeSetMismatchError("cardinality map does not cover the node set");
    std::ostringstream out;
    for (int v = 0; v < g.node_count(); ++v)
        out << "node " << g.name(v) << " " << cards.at(v) << "\n";
    for (const Arc& arc : g.arcs()) out << "arc " << g.name(arc.from) << " " << g.name(arc.to) << "\n";
    return out.str();
}

NodeOrder parse_order(const std::string& text, const Dag& g) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<NodeId> perm;
    std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
    while (std::getline(in, line)) {
        ++lineno;
        for (const auto& tok : tokenize(strip_comment(line))) {
            const auto v = g.index_of(tok);
            if (!v) throw ParseError(lineno, "unknown node: " + tok);
            if (seen[*v]) throw NotAPermutationError("node repeated in ordering: " + tok);
            seen[*v] = 1;
            perm.push_back(*v);
        }
    }
    if (static_cast<int>(perm.size()) != g.node_count())
        throw NotAPermutationError("ordering does not mention every node");
    return NodeOrder(std::move(perm));
}

std::string serialize_order(const NodeOrder& order, const Dag& g) {
    if (order.size() != g.node_count())
        throw NodeSetMismatchError("ordering does not cover the node set");
    std::ostringstream out;
    for (int i = 0; i < order.size(); ++i) {
        if (i > 0) out << " ";
        out << g.name(order.node_at(i));
    }
    out << "\n";
    return out.str();
}

std::string serialize_steps(const StepLog& log, const Dag& g) {
    std::ostringstream out;
    for (const Step& s : log.steps) {
        switch (s.kind) {
            case Step::Kind::add: out << "ADD "; break;
            case Step::Kind::reverse: out << "REVERSE "; break;
            case Step::Kind::swap_nodes: out << "SWAP "; break;
        }
        out << g.name(s.a) << " " << g.name(s.b) << "\n";
    }
    return out.str();
}

std::string serialize_trace(const TransformTrace& tr) {
    std::ostringstream out;
    for (const TransformStep& s : tr.steps) {
        out << (s.kind == TransformStep::Kind::add ? "ADD " : "REVERSE ");
        out << tr.start.name(s.arc.from) << " " << tr.start.name(s.arc.to) << "\n";
    }
    return out.str();
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

ParsedDag load_dag(const std::string& path) { return parse_dag(read_file(path)); }

// All instance files must agree on node declarations and cardinalities.
ConsensusInstance load_instance(const std::vector<std::string>& paths,
                                std::optional<std::uint64_t> bound = std::nullopt) {
    std::vector<Dag> dags;
    std::optional<CardinalityMap> cards;
    for (const auto& path : paths) {
        ParsedDag parsed = load_dag(path);
        if (!dags.empty()) {
            if (!parsed.dag.same_node_set(dags.front()))
                throw NodeSetMismatchError(path + ": node set differs from the first file");
            if (!(parsed.cards == *cards))
                throw Error(path + ": cardinalities differ from the first file");
        } else {
            cards = parsed.cards;
        }
        dags.push_back(std::move(parsed.dag));
    }
    return ConsensusInstance(std::move(dags), std::move(*cards), bound);
}

std::vector<NodeId> names_to_ids(const Dag& g, const std::vector<std::string>& names) {
    std::vector<NodeId> out;
    for (const auto& name : names) {
        if (name.empty()) continue;  // a bare --z carries one empty value
        const auto v = g.index_of(name);
        if (!v) throw Error("unknown node: " + name);
        out.push_back(*v);
    }
    return out;
}

TieBreak tie_from_string(const std::string& s) {
    return s == "legacy-trace" ? TieBreak::legacy() : TieBreak::corrected();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Combine directed acyclic graph models through minimal "
                 "directed independence maps"};
    app.name("dagcons");
    app.require_subcommand(1);

    // dsep
    auto* dsep = app.add_subcommand("dsep", "Decide a separation statement");
    std::string dsep_file;
    std::vector<std::string> xs, ys, zs;
    dsep->add_option("file", dsep_file, "DAG file")->required();
    dsep->add_option("--x", xs, "left node set")->required()->expected(1, -1);
    dsep->add_option("--y", ys, "right node set")->required()->expected(1, -1);
    dsep->add_option("--z", zs, "conditioning set")->expected(0, -1);

    // params
    auto* params_cmd = app.add_subcommand("params", "Parameter count of a DAG");
    std::string params_file;
    params_cmd->add_option("file", params_file, "DAG file")->required();

    // mdi
    auto* mdi = app.add_subcommand("mdi", "Minimal directed independence map relative to an ordering");
    std::string mdi_file, mdi_order, mdi_method = "b2", mdi_tie = "corrected";
    bool mdi_trace = false;
    mdi->add_option("file", mdi_file, "DAG file")->required();
    mdi->add_option("order", mdi_order, "ordering file")->required();
    mdi->add_option("--method", mdi_method, "a|b|a2|b2|bruteforce|iamb")
        ->check(CLI::IsMember({"a", "b", "a2", "b2", "bruteforce", "iamb"}));
    mdi->add_option("--tie", mdi_tie, "corrected|legacy-trace")
        ->check(CLI::IsMember({"corrected", "legacy-trace"}));
    mdi->add_flag("--trace", mdi_trace, "emit the percolation step log on stderr");

    // consensus
    auto* cons = app.add_subcommand("consensus", "Heuristic consensus for a given ordering");
    std::vector<std::string> cons_files;
    std::string cons_order;
    cons->add_option("files", cons_files, "DAG files")->required()->expected(1, -1);
    cons->add_option("--order", cons_order, "ordering file")->required();

    // consensus-search
    auto* search = app.add_subcommand("consensus-search", "Search node orderings for a good consensus");
    std::vector<std::string> search_files;
    std::string search_strategy = "restarts", search_neigh = "adjacent-swap";
    std::uint64_t search_seed = 0;
    int search_iters = 100;
    search->add_option("files", search_files, "DAG files")->required()->expected(1, -1);
    search->add_option("--strategy", search_strategy, "hill-climb|annealing|restarts")
        ->check(CLI::IsMember({"hill-climb", "annealing", "restarts"}));
    search->add_option("--seed", search_seed, "random seed");
    search->add_option("--iters", search_iters, "iteration budget");
    search->add_option("--neighborhood", search_neigh, "adjacent-swap|arbitrary-swap")
        ->check(CLI::IsMember({"adjacent-swap", "arbitrary-swap"}));

    // consensus-exact
    auto* exact = app.add_subcommand("consensus-exact", "Exhaustive consensus for tiny node sets");
    std::vector<std::string> exact_files;
    int exact_limit = 5;
    exact->add_option("files", exact_files, "DAG files")->required()->expected(1, -1);
    exact->add_option("--limit", exact_limit, "node-count limit");

    // verify
    auto* verify = app.add_subcommand("verify", "Check a candidate against an instance");
    std::string verify_candidate;
    std::vector<std::string> verify_files;
    std::optional<std::uint64_t> verify_bound;
    verify->add_option("candidate", verify_candidate, "candidate DAG file")->required();
    verify->add_option("files", verify_files, "instance DAG files")->required()->expected(1, -1);
    verify->add_option("--bound", verify_bound, "parameter bound");

    // g2h
    auto* g2h_cmd = app.add_subcommand("g2h", "Transform one DAG into an independence submodel of it");
    std::string g2h_g, g2h_h, g2h_trace_path;
    g2h_cmd->add_option("gfile", g2h_g, "source DAG file")->required();
    g2h_cmd->add_option("hfile", g2h_h, "target DAG file")->required();
    g2h_cmd->add_option("--emit-trace", g2h_trace_path, "write the step trace to this path");

    // gen-fas
    auto* gen = app.add_subcommand("gen-fas", "Feedback-arc-set reduction instance generator");
    std::string gen_edges, gen_prefix;
    gen->add_option("edgelist", gen_edges, "digraph edge list file")->required();
    gen->add_option("--out-prefix", gen_prefix, "output file prefix")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*dsep) {
            ParsedDag in = load_dag(dsep_file);
            SeparationQuery q{names_to_ids(in.dag, xs), names_to_ids(in.dag, ys),
                              names_to_ids(in.dag, zs)};
            const bool sep = d_separated(in.dag, q);
            out << (sep ? "SEPARATED" : "NOT SEPARATED") << "\n";
            return sep ? 0 : 1;
        }
        if (*params_cmd) {
            ParsedDag in = load_dag(params_file);
            out << parameter_count(in.dag, in.cards) << "\n";
            return 0;
        }
        if (*mdi) {
            ParsedDag in = load_dag(mdi_file);
            NodeOrder alpha = parse_order(read_file(mdi_order), in.dag);
            const TieBreak tie = tie_from_string(mdi_tie);
            StepLog log;
            StepLog* logp = mdi_trace ? &log : nullptr;
            Dag result = [&] {
                if (mdi_method == "a") return method_a(in.dag, alpha, tie, logp);
                if (mdi_method == "b") return method_b(in.dag, alpha, tie, logp);
                if (mdi_method == "a2") return method_a2(in.dag, alpha, tie, logp);
                if (mdi_method == "bruteforce") return mdi_bruteforce(in.dag, alpha);
                if (mdi_method == "iamb") return mdi_iamb(in.dag, alpha);
                return method_b2(in.dag, alpha, tie, logp);
            }();
            if (mdi_trace) err << serialize_steps(log, in.dag);
            out << serialize_dag(result, in.cards);
            return 0;
        }
        if (*cons) {
            ConsensusInstance inst = load_instance(cons_files);
            NodeOrder alpha = parse_order(read_file(cons_order), inst.dags.front());
            ConsensusResult res = heuristic_consensus(inst, alpha);
            out << "# order " << serialize_order(*res.ordering, res.dag);
            out << "# params " << res.params << "\n";
            out << serialize_dag(res.dag, inst.cards);
            return 0;
        }
        if (*search) {
            ConsensusInstance inst = load_instance(search_files);
            SearchConfig cfg;
            cfg.seed = search_seed;
            cfg.max_iters = search_iters;
            if (search_strategy == "hill-climb") cfg.strategy = SearchConfig::Strategy::hill_climb;
            if (search_strategy == "annealing") cfg.strategy = SearchConfig::Strategy::annealing;
            if (search_strategy == "restarts") cfg.strategy = SearchConfig::Strategy::restarts;
            cfg.neighborhood = search_neigh == "arbitrary-swap"
                                   ? SearchConfig::Neighborhood::arbitrary_swap
                                   : SearchConfig::Neighborhood::adjacent_swap;
            ConsensusResult res = search_ordering(inst, cfg);
            out << "# order " << serialize_order(*res.ordering, res.dag);
            out << "# params " << res.params << "\n";
            out << serialize_dag(res.dag, inst.cards);
            return 0;
        }
        if (*exact) {
            ConsensusInstance inst = load_instance(exact_files);
            const auto optima = exact_consensus(inst, exact_limit);
            out << "# optima " << optima.size() << " params "
                << (optima.empty() ? 0 : optima.front().params) << "\n";
            for (std::size_t i = 0; i < optima.size(); ++i) {
                out << "# optimum " << (i + 1) << "/" << optima.size() << " independences "
                    << independence_count(optima[i].dag) << "\n";
                out << serialize_dag(optima[i].dag, inst.cards);
                if (i + 1 < optima.size()) out << "\n";
            }
            return 0;
        }
        if (*verify) {
            ParsedDag cand = load_dag(verify_candidate);
            ConsensusInstance inst = load_instance(verify_files, verify_bound);
            const bool imap = verify_imap(cand.dag, inst);
            const std::uint64_t count = parameter_count(cand.dag, inst.cards);
            bool pass = imap;
            out << "imap " << (imap ? "yes" : "no") << "\n";
            out << "params " << count << "\n";
            if (verify_bound) {
                out << "bound " << *verify_bound << "\n";
                pass = verify_instance(cand.dag, inst);
            }
            out << "verdict " << (pass ? "PASS" : "FAIL") << "\n";
            return pass ? 0 : 1;
        }
        if (*g2h_cmd) {
            ParsedDag g = load_dag(g2h_g);
            ParsedDag h = load_dag(g2h_h);
            TransformTrace tr = g2h(g.dag, h.dag);
            if (!g2h_trace_path.empty()) write_file(g2h_trace_path, serialize_trace(tr));
            out << "# steps " << tr.steps.size() << "\n";
            out << serialize_dag(tr.end, h.cards);
            return 0;
        }
        if (*gen) {
            const std::string text = read_file(gen_edges);
            std::istringstream in(text);
            std::string line;
            int lineno = 0;
            std::vector<std::pair<std::string, std::string>> arcs;
            while (std::getline(in, line)) {
                ++lineno;
                const auto toks = tokenize(strip_comment(line));
                if (toks.empty()) continue;
                if (toks.size() != 2) throw ParseError(lineno, "expected: <tail> <head>");
                arcs.push_back({toks[0], toks[1]});
            }
            ConsensusInstance inst = reduce_fas_to_consensus(arcs);
            const char* suffix[3] = {"_c1.dag", "_c2.dag", "_c3.dag"};
            for (int i = 0; i < 3; ++i) {
                const std::string path = gen_prefix + suffix[i];
                write_file(path, serialize_dag(inst.dags[i], inst.cards));
                out << path << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace dagcons
