#include "mfic/io.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "mfic/rng.hpp"

namespace mfic {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

int parse_value(const std::string& tok, int line_no) {
    std::size_t pos = 0;
    int v;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected an integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line_no, "expected an integer, got '" + tok + "'");
    if (v < 0) throw ParseError(line_no, "values must be non-negative");
    return v;
}

// Scope variables are written as x<id>.
std::string var_name(VarId x) { return "x" + std::to_string(x); }

VarId parse_var_name(const std::string& tok, int line_no) {
    if (tok.size() < 2 || tok[0] != 'x')
        throw ParseError(line_no, "expected a variable name like x3, got '" + tok + "'");
    return parse_value(tok.substr(1), line_no);
}

}  // namespace

Instance parse_instance(const std::string& text) {
    Instance inst;
    std::map<std::string, VarId> by_name;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool in_table = false;
    TableConstraint current;

    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = tokenize(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (!in_table) {
            if (toks[0] == "var") {
                if (toks.size() < 3)
                    throw ParseError(line_no, "var needs a name and at least one value");
                if (by_name.count(toks[1]))
                    throw ParseError(line_no, "duplicate variable '" + toks[1] + "'");
                std::vector<Value> dom;
                for (std::size_t i = 2; i < toks.size(); ++i)
                    dom.push_back(parse_value(toks[i], line_no));
                std::sort(dom.begin(), dom.end());
                dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
                by_name[toks[1]] = inst.n_vars();
                inst.domains.push_back(std::move(dom));
            } else if (toks[0] == "table") {
                if (toks.size() < 2) throw ParseError(line_no, "table needs a scope");
                current = TableConstraint{};
                std::set<VarId> seen;
                for (std::size_t i = 1; i < toks.size(); ++i) {
                    const auto it = by_name.find(toks[i]);
                    if (it == by_name.end())
                        throw ScopeError("unknown variable '" + toks[i] + "' in scope");
                    if (!seen.insert(it->second).second)
                        throw ScopeError("variable '" + toks[i] + "' repeats in scope");
                    current.scope.push_back(it->second);
                }
                in_table = true;
            } else {
                throw ParseError(line_no, "unknown directive '" + toks[0] + "'");
            }
        } else {
            if (toks[0] == "end") {
                inst.constraints.push_back(canonicalize(current));
                in_table = false;
                continue;
            }
            if (toks.size() != current.scope.size())
                throw RaggedTuple("tuple of length " + std::to_string(toks.size()) +
                                  " under arity " + std::to_string(current.scope.size()));
            Tuple t;
            for (const auto& tok : toks) t.push_back(parse_value(tok, line_no));
            current.tuples.push_back(std::move(t));
        }
    }
    if (in_table) throw ParseError(line_no, "unterminated table block");
    return inst;
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    for (VarId x = 0; x < inst.n_vars(); ++x) {
        out << "var " << var_name(x);
        for (Value v : inst.domains[x]) out << ' ' << v;
        out << '\n';
    }
    for (const TableConstraint& c : inst.constraints) {
        out << "table";
        for (VarId x : c.scope) out << ' ' << var_name(x);
        out << '\n';
        for (const Tuple& t : c.tuples) {
            for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
            out << '\n';
        }
        out << "end\n";
    }
    return out.str();
}

CompressedTable parse_compressed(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    CompressedTable ct;
    bool have_header = false, have_default = false;

    auto next_tokens = [&](std::vector<std::string>& toks) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            toks = tokenize(line);
            if (!toks.empty() && toks[0][0] != '#') return true;
        }
        return false;
    };

    std::vector<std::string> toks;
    while (next_tokens(toks)) {
        if (!have_header) {
            if (toks[0] != "compressed" || toks.size() < 2)
                throw ParseError(line_no, "expected 'compressed <scope>'");
            for (std::size_t i = 1; i < toks.size(); ++i)
                ct.scope.push_back(parse_var_name(toks[i], line_no));
            ct.arity = static_cast<int>(ct.scope.size());
            have_header = true;
        } else if (toks[0] == "entry") {
            if (have_default) throw ParseError(line_no, "entry after the default block");
            Entry e;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                const auto eq = toks[i].find('=');
                if (eq == std::string::npos)
                    throw ParseError(line_no, "expected var=value, got '" + toks[i] + "'");
                const VarId var = parse_var_name(toks[i].substr(0, eq), line_no);
                const Value val = parse_value(toks[i].substr(eq + 1), line_no);
                e.itemset.push_back({var, val});
                e.item_vars.push_back(var);
            }
            if (e.itemset.empty()) throw ParseError(line_no, "entry needs an itemset");
            if (!next_tokens(toks) || toks[0] != "sub")
                throw ParseError(line_no, "expected 'sub <scope>' after entry");
            for (std::size_t i = 1; i < toks.size(); ++i)
                e.sub_scope.push_back(parse_var_name(toks[i], line_no));
            while (next_tokens(toks) && toks[0] != "end") {
                if (toks.size() != e.sub_scope.size())
                    throw RaggedTuple("sub-tuple of length " + std::to_string(toks.size()) +
                                      " under sub-arity " + std::to_string(e.sub_scope.size()));
                Tuple t;
                for (const auto& tok : toks) t.push_back(parse_value(tok, line_no));
                e.sub_tuples.push_back(std::move(t));
            }
            if (toks.empty() || toks[0] != "end")
                throw ParseError(line_no, "unterminated entry block");
            ct.entries.push_back(std::move(e));
        } else if (toks[0] == "default") {
            if (have_default) throw ParseError(line_no, "duplicate default block");
            while (next_tokens(toks) && toks[0] != "end") {
                if (static_cast<int>(toks.size()) != ct.arity)
                    throw RaggedTuple("default tuple of length " + std::to_string(toks.size()) +
                                      " under arity " + std::to_string(ct.arity));
                Tuple t;
                for (const auto& tok : toks) t.push_back(parse_value(tok, line_no));
                ct.default_tuples.push_back(std::move(t));
            }
            if (toks.empty() || toks[0] != "end")
                throw ParseError(line_no, "unterminated default block");
            have_default = true;
        } else {
            throw ParseError(line_no, "unknown directive '" + toks[0] + "'");
        }
    }
    if (!have_header) throw ParseError(line_no, "missing 'compressed' header");
    if (!have_default) throw ParseError(line_no, "missing default block");
    return ct;
}

std::string write_compressed(const CompressedTable& ct) {
    std::ostringstream out;
    out << "compressed";
    for (VarId x : ct.scope) out << ' ' << var_name(x);
    out << '\n';
    for (const Entry& e : ct.entries) {
        out << "entry";
        for (const Literal& lit : e.itemset)
            out << ' ' << var_name(lit.var) << '=' << lit.val;
        out << '\n';
        out << "sub";
        for (VarId x : e.sub_scope) out << ' ' << var_name(x);
        out << '\n';
        for (const Tuple& t : e.sub_tuples) {
            for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
            out << '\n';
        }
        out << "end\n";
    }
    out << "default\n";
    for (const Tuple& t : ct.default_tuples) {
        for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
        out << '\n';
    }
    out << "end\n";
    return out.str();
}

Instance gen_random(const GenParams& p) {
    if (p.n_vars < 1 || p.dom_size < 1 || p.arity < 1 || p.arity > p.n_vars ||
        p.n_constraints < 0 || p.tuples_per_constraint < 0)
        throw InvalidConfig("bad generator parameters");

    unsigned __int128 product = 1;
    bool huge = false;
    for (int i = 0; i < p.arity && !huge; ++i) {
        product *= static_cast<unsigned>(p.dom_size);
        if (product > (static_cast<unsigned __int128>(1) << 62)) huge = true;
    }
    if (!huge && static_cast<unsigned __int128>(p.tuples_per_constraint) > product)
        throw Infeasible("tuples_per_constraint exceeds the value product");

    Rng rng(p.seed);
    Instance inst;
    inst.domains.assign(p.n_vars, {});
    for (auto& dom : inst.domains) {
        dom.resize(p.dom_size);
        for (int v = 0; v < p.dom_size; ++v) dom[v] = v;
    }

    for (int ci = 0; ci < p.n_constraints; ++ci) {
        TableConstraint c;
        std::vector<VarId> pool(p.n_vars);
        for (int i = 0; i < p.n_vars; ++i) pool[i] = i;
        for (int i = 0; i < p.arity; ++i) {
            const int j = i + static_cast<int>(rng.below(p.n_vars - i));
            std::swap(pool[i], pool[j]);
            c.scope.push_back(pool[i]);
        }
        const std::uint64_t k = static_cast<std::uint64_t>(p.tuples_per_constraint);
        auto decode = [&](std::uint64_t code) {
            Tuple t(p.arity);
            for (int j = p.arity - 1; j >= 0; --j) {
                t[j] = static_cast<Value>(code % p.dom_size);
                code /= p.dom_size;
            }
            return t;
        };
        std::set<Tuple> chosen;
        if (!huge) {
            // Floyd's distinct sampling over tuple codes.
            std::set<std::uint64_t> codes;
            const std::uint64_t prod = static_cast<std::uint64_t>(product);
            for (std::uint64_t j = prod - k; j < prod; ++j) {
                const std::uint64_t r = rng.below(j + 1);
                if (!codes.insert(r).second) codes.insert(j);
            }
            for (std::uint64_t code : codes) chosen.insert(decode(code));
        } else {
            while (chosen.size() < k) {
                Tuple t(p.arity);
                for (int j = 0; j < p.arity; ++j)
                    t[j] = static_cast<Value>(rng.below(p.dom_size));
                chosen.insert(std::move(t));
            }
        }
        c.tuples.assign(chosen.begin(), chosen.end());
        inst.constraints.push_back(canonicalize(c));
    }
    return inst;
}

std::string write_stats_csv(const std::vector<StatsRow>& rows) {
    std::ostringstream out;
    out << "instance,method,c_tup_pct,c_rate_pct,n_itemsets,avg_len,avg_freq,solved,nodes,"
           "time_s\n";
    out << std::fixed << std::setprecision(2);
    for (const StatsRow& r : rows) {
        out << r.instance << ',' << r.method << ',' << r.comp.c_tup_pct << ','
            << r.comp.c_rate_pct << ',' << r.comp.n_itemsets << ',' << r.comp.avg_len << ','
            << r.comp.avg_freq << ',' << r.solved << ',' << r.nodes << ',' << r.time_s << '\n';
    }
    return out.str();
}

}  // namespace mfic
