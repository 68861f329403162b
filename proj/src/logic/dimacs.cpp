#include "kemja/logic/dimacs.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace kemja {

void write_dimacs(std::ostream& os, const CnfFormula& cnf, std::span<const int> extra_units) {
    os << "p cnf " << cnf.num_vars() << ' ' << cnf.num_clauses() + extra_units.size() << '\n';
    for (const auto& c : cnf.clauses()) {
        for (int l : c) os << l << ' ';
        os << "0\n";
    }
    for (int l : extra_units) os << l << " 0\n";
}

std::string to_dimacs(const CnfFormula& cnf) {
    std::ostringstream os;
    write_dimacs(os, cnf);
    return os.str();
}

namespace {

struct LineReader {
    std::istream& is;
    int line = 0;

    // next non-comment, non-blank line
    bool next(std::string& out) {
        while (std::getline(is, out)) {
            ++line;
            std::size_t i = out.find_first_not_of(" \t\r");
            if (i == std::string::npos || out[i] == 'c') continue;
            return true;
        }
        return false;
    }
};

struct Header {
    long vars = 0, clauses = 0;
};

Header read_header(LineReader& r, const std::string& kind) {
    std::string s;
    if (!r.next(s)) throw ParseError("missing header", r.line + 1, 1);
    std::istringstream ls(s);
    std::string p, fmt;
    Header h;
    if (!(ls >> p >> fmt >> h.vars >> h.clauses) || p != "p" || fmt != kind || h.vars < 0 || h.clauses < 0)
        throw ParseError("malformed header, expected 'p " + kind + " V C'", r.line, 1);
    std::string junk;
    if (ls >> junk) throw ParseError("trailing data after header", r.line, 1);
    return h;
}

std::vector<int> read_ints(const std::string& s, LineReader& r, std::size_t from = 0) {
    std::istringstream ls(s.substr(from));
    std::vector<int> xs;
    std::string tok;
    while (ls >> tok) {
        char* end = nullptr;
        long v = std::strtol(tok.c_str(), &end, 10);
        if (*end != '\0') throw ParseError("bad integer '" + tok + "'", r.line, 1);
        xs.push_back(static_cast<int>(v));
    }
    return xs;
}

std::vector<std::vector<int>> read_clauses(LineReader& r, const Header& h, std::string pending) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    bool have = !pending.empty();
    for (;;) {
        std::string s;
        if (have) {
            s = std::move(pending);
            have = false;
        } else if (!r.next(s)) {
            break;
        }
        for (int l : read_ints(s, r)) {
            if (l == 0) {
                out.push_back(std::move(cur));
                cur.clear();
                continue;
            }
            if (std::abs(l) > h.vars) throw ParseError("literal " + std::to_string(l) + " out of range", r.line, 1);
            cur.push_back(l);
        }
    }
    if (!cur.empty()) throw ParseError("unterminated clause", r.line, 1);
    if (static_cast<long>(out.size()) != h.clauses)
        throw ParseError("header announces " + std::to_string(h.clauses) + " clauses, found " +
                             std::to_string(out.size()),
                         r.line, 1);
    return out;
}

}  // namespace

CnfFormula read_dimacs(std::istream& is) {
    LineReader r{is};
    Header h = read_header(r, "cnf");
    CnfFormula cnf;
    for (long v = 1; v <= h.vars; ++v) cnf.set_name(cnf.new_var(), "v" + std::to_string(v));
    for (auto& c : read_clauses(r, h, "")) {
        if (c.empty()) throw ParseError("empty clause", r.line, 1);
        cnf.add_clause(c);
    }
    return cnf;
}

SolverAnswer parse_solver_output(const std::string& text) {
    SolverAnswer out;
    std::istringstream is(text);
    std::string line;
    bool status = false;
    while (std::getline(is, line)) {
        if (line.rfind("s ", 0) == 0) {
            std::string st = line.substr(2);
            while (!st.empty() && (st.back() == '\r' || st.back() == ' ')) st.pop_back();
            if (st == "SATISFIABLE")
                out.result = SatResult::Sat;
            else if (st == "UNSATISFIABLE")
                out.result = SatResult::Unsat;
            else if (st == "UNKNOWN")
                out.result = SatResult::Unknown;
            else
                throw SolverError("unrecognised status line: " + line);
            status = true;
        } else if (line.rfind("v ", 0) == 0 || line == "v") {
            std::istringstream ls(line.substr(1));
            int l;
            while (ls >> l)
                if (l != 0) out.model.push_back(l);
        }
    }
    if (!status) throw SolverError("solver produced no status line");
    return out;
}

QbfInstance read_qdimacs(std::istream& is) {
    LineReader r{is};
    Header h = read_header(r, "cnf");
    std::vector<int> ex, un;
    std::string s;
    auto quant = [&](char q, std::vector<int>& dst) {
        if (!r.next(s)) throw ParseError("missing quantifier line", r.line + 1, 1);
        std::size_t i = s.find_first_not_of(" \t");
        if (s[i] != q)
            throw ParseError(std::string("expected '") + q + "' line (only exists-forall prefixes are accepted)",
                             r.line, static_cast<int>(i) + 1);
        auto xs = read_ints(s, r, i + 1);
        if (xs.empty() || xs.back() != 0) throw ParseError("quantifier line must end with 0", r.line, 1);
        xs.pop_back();
        for (int v : xs)
            if (v <= 0 || v > h.vars) throw ParseError("bad quantified variable", r.line, 1);
        dst = xs;
    };
    quant('e', ex);
    quant('a', un);
    if (!r.next(s)) s.clear();
    {
        std::size_t i = s.find_first_not_of(" \t");
        if (i != std::string::npos && (s[i] == 'e' || s[i] == 'a'))
            throw ParseError("only one exists and one forall block are accepted", r.line, static_cast<int>(i) + 1);
    }
    auto clauses = read_clauses(r, h, s);

    QbfInstance q;
    std::map<int, std::string> name;
    std::set<int> bound;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        if (!bound.insert(ex[i]).second) throw ParseError("variable quantified twice", r.line, 1);
        name[ex[i]] = "x_" + std::to_string(i + 1);
        q.exists.push_back(name[ex[i]]);
    }
    for (std::size_t i = 0; i < un.size(); ++i) {
        if (!bound.insert(un[i]).second) throw ParseError("variable quantified twice", r.line, 1);
        name[un[i]] = "y_" + std::to_string(i + 1);
        q.forall.push_back(name[un[i]]);
    }
    std::vector<Formula> cs;
    for (const auto& c : clauses) {
        std::vector<Formula> ls;
        for (int l : c) {
            auto it = name.find(std::abs(l));
            if (it == name.end()) throw ParseError("free variable " + std::to_string(std::abs(l)), r.line, 1);
            Formula v = Formula::var(it->second);
            ls.push_back(l > 0 ? v : !v);
        }
        cs.push_back(Formula::make_or(std::move(ls)));
    }
    q.matrix = Formula::make_and(std::move(cs));
    return q;
}

}  // namespace kemja
