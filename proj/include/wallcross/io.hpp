#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "consistency.hpp"

namespace wallcross {

// Text form of a diagram:
//   rank 3
//   t_blocks 1 1
//   order 6
//   (0,1,0) (1,0,0) | (-1,0,0) | 1 + t1*x
// Blank lines and lines starting with '#' are ignored; '*' stands for a mixed direction.
inline void write_diagram(std::ostream& os, const ScatteringDiagram& d, const VariableNames& names) {
    os << "rank " << d.monoid.m_rank << "\n";
    os << "t_blocks";
    for (int s : d.monoid.t_blocks) os << " " << s;
    os << "\norder " << d.order << "\n";
    for (const auto& w : d.walls) {
        std::string gens;
        for (const auto& g : w.support.generators()) gens += (gens.empty() ? "" : " ") + to_string(g);
        os << gens << " | " << (w.direction ? to_string(*w.direction) : "*") << " | " << render(w.function, names) << "\n";
    }
}

inline std::string diagram_to_string(const ScatteringDiagram& d, const VariableNames& names) {
    std::ostringstream os;
    write_diagram(os, d, names);
    return os.str();
}

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<LatticeVector> parse_vectors(const std::string& text) {
    std::vector<LatticeVector> out;
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string::npos) {
        auto end = text.find(')', pos);
        if (end == std::string::npos) fail("ParseError", "unterminated vector in \"" + text + "\"");
        LatticeVector v;
        std::stringstream ss(text.substr(pos + 1, end - pos - 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                v.push_back(std::stoll(trim(item)));
            } catch (const std::exception&) {
                fail("ParseError", "bad integer \"" + item + "\"");
            }
        }
        out.push_back(v);
        pos = end + 1;
    }
    return out;
}

}  // namespace detail

inline ScatteringDiagram read_diagram(std::istream& is, const VariableNames* names_in = nullptr) {
    int rank = 0, order = -1;
    std::vector<int> blocks;
    bool have_blocks = false;
    std::vector<std::string> wall_lines;
    std::string line;
    while (std::getline(is, line)) {
        line = detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "rank") {
            ls >> rank;
        } else if (key == "order") {
            ls >> order;
        } else if (key == "t_blocks") {
            have_blocks = true;
            int s;
            while (ls >> s) blocks.push_back(s);
        } else {
            wall_lines.push_back(line);
        }
    }
    if (rank == 0 || order < 0 || !have_blocks) fail("ParseError", "diagram header needs rank, t_blocks and order");
    ExponentMonoid P(rank, blocks);
    VariableNames names = names_in ? *names_in : VariableNames::defaults(P);
    ScatteringDiagram d{P, order, {}, nullptr};
    for (const auto& l : wall_lines) {
        auto a = l.find('|');
        auto b = a == std::string::npos ? a : l.find('|', a + 1);
        if (b == std::string::npos) fail("ParseError", "wall line needs 'support | direction | function': " + l);
        auto gens = detail::parse_vectors(l.substr(0, a));
        for (const auto& g : gens)
            if (static_cast<int>(g.size()) != rank) fail("ParseError", "generator of wrong length in: " + l);
        auto f = parse_series(detail::trim(l.substr(b + 1)), P, order, names);
        auto w = make_wall(Cone::from_generators(rank, gens), f);
        auto dir = detail::trim(l.substr(a + 1, b - a - 1));
        if (dir != "*") {
            auto v = detail::parse_vectors(dir);
            if (v.size() != 1 || !w.direction || v[0] != *w.direction) fail("ParseError", "direction does not match the function: " + l);
        }
        d.walls.push_back(std::move(w));
    }
    return d;
}

inline ScatteringDiagram diagram_from_string(const std::string& text, const VariableNames* names = nullptr) {
    std::istringstream is(text);
    return read_diagram(is, names);
}

// "e3", "-e1-e2", "2e1+e3", or a fan ray label when v is a ray of the fan.
inline std::string vector_label(const LatticeVector& v, const Fan* fan) {
    if (fan)
        for (std::size_t i = 0; i < fan->rays.size(); ++i)
            if (fan->rays[i] == v && i < fan->ray_labels.size()) return fan->ray_labels[i];
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (v[i] < 0) s += "-";
        else if (!s.empty()) s += "+";
        Int a = v[i] < 0 ? -v[i] : v[i];
        if (a != 1) s += std::to_string(a);
        s += "e" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
}

inline std::string support_label(const Cone& c, const Fan* fan) {
    std::vector<LatticeVector> gens = c.rays();
    for (const auto& l : c.lineality()) {
        gens.push_back(l);
        gens.push_back(-l);
    }
    std::string s = "<";
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + vector_label(gens[i], fan);
    return s + ">";
}

struct TableRow {
    bool incoming = false;
    std::size_t terms = 0;
    int degree = 0;  // highest t-order among the terms
    std::string function;
    std::vector<std::string> supports;
};

// Rows "support, support, ... | function", incoming rows first, then by size, degree and text of the function.
inline std::string format_rows(std::vector<TableRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
        if (a.incoming != b.incoming) return a.incoming;
        if (a.terms != b.terms) return a.terms < b.terms;
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.function < b.function;
    });
    std::string out;
    for (auto& r : rows) {
        std::string s;
        for (const auto& sup : r.supports) s += (s.empty() ? "" : ", ") + sup;
        out += s + " | " + r.function + "\n";
    }
    return out;
}

namespace detail {

template <class Series>
int top_order(const Series& f) {
    int d = 0;
    for (const auto& [m, c] : f.terms()) d = std::max(d, m.order());
    return d;
}

template <class Series>
void add_row(std::vector<TableRow>& rows, bool incoming, const Series& f, const std::string& function, const std::string& support) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) { return r.incoming == incoming && r.function == function; });
    if (it == rows.end()) {
        rows.push_back({incoming, f.size(), top_order(f), function, {}});
        it = rows.end() - 1;
    }
    it->supports.push_back(support);
}

}  // namespace detail

// Table view of a (minimal) diagram: incoming factors on their own rows, walls grouped by function.
inline std::string diagram_table(const ScatteringDiagram& d, const VariableNames& names) {
    std::vector<TableRow> rows;
    const Fan* fan = d.fan.get();
    for (const auto& w : d.walls)
        for (const auto& piece : split_incoming(w))
            detail::add_row(rows, is_incoming(piece), piece.function, render(piece.function, names), support_label(piece.support, fan));
    return format_rows(rows);
}

inline std::string canonical_table(const std::vector<CanonicalWall>& walls, const BlowupSpec& spec, const VariableNames& names) {
    auto basis = kernel_basis(spec.fan, spec.monoid());
    std::vector<TableRow> rows;
    for (const auto& w : walls)
        detail::add_row(rows, w.incoming, w.function, render(w.function, basis, names), support_label(w.support, &spec.fan));
    return format_rows(rows);
}

// Lines "support | beta | u | N", in wall order then term order.
inline std::string invariants_table(const std::vector<CanonicalWall>& walls, const BlowupSpec& spec, int order) {
    auto basis = kernel_basis(spec.fan, spec.monoid());
    std::string out;
    for (const auto& w : walls)
        for (const auto& inv : extract_invariants(w, order))
            out += support_label(w.support, &spec.fan) + " | " + basis.label(inv.beta) + " | " + to_string(inv.u) + " | " +
                   inv.N.get_str() + "\n";
    return out;
}

// Per-joint PASS/FAIL lines with the offending log terms.
inline std::string consistency_lines(const ConsistencyReport& report, const VariableNames& names) {
    std::string out;
    for (const auto& j : report.joints) {
        out += (j.pass ? "PASS " : "FAIL ") + j.joint.cone.to_string();
        if (!j.pass) {
            out += " order " + std::to_string(j.failure_order) + ":";
            for (const auto& t : j.log) {
                std::string cov;
                for (std::size_t i = 0; i < t.covector.size(); ++i) cov += (i ? "," : "") + t.covector[i].get_str();
                out += " " + monomial_body(t.monomial, names) + " d_(" + cov + ")";
            }
        }
        out += "\n";
    }
    return out;
}

}  // namespace wallcross
