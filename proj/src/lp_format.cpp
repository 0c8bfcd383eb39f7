#include "h2pf/lp_format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace h2pf {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Emits a linear expression, wrapping long lines (LP readers cap line length).
void write_expr(std::ostream& out, const MilpProblem& m, const std::vector<LinearTerm>& terms) {
    if (terms.empty()) {
        // An empty expression is not valid LP syntax; reference the first variable with a zero coefficient.
        out << " 0 " << lp_safe_name(m.variables().front().name);
        return;
    }
    std::size_t on_line = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double c = terms[i].coef;
        out << (c < 0 ? " - " : (i == 0 ? " " : " + ")) << num(std::abs(c)) << ' '
            << lp_safe_name(m.variables()[terms[i].var].name);
        if (++on_line == 6 && i + 1 < terms.size()) {
            out << "\n   ";
            on_line = 0;
        }
    }
}

} // namespace

std::string lp_safe_name(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        switch (c) {
        case '[': out.push_back('('); break;
        case ']': out.push_back(')'); break;
        case '=': break;
        case '-': out.push_back('~'); break;
        case ' ': out.push_back('_'); break;
        default: out.push_back(c);
        }
    }
    return out;
}

void write_lp(const MilpProblem& m, std::ostream& out) {
    out << "\\ day-ahead hydrogen portfolio schedule\n";
    out << "Maximize\n obj:";
    std::vector<LinearTerm> obj;
    for (std::size_t i = 0; i < m.objective().size(); ++i) {
        if (m.objective()[i] != 0.0) obj.push_back({static_cast<int>(i), m.objective()[i]});
    }
    if (!m.variables().empty()) write_expr(out, m, obj);
    out << "\nSubject To\n";
    for (const Constraint& c : m.constraints()) {
        out << ' ' << lp_safe_name(c.tag) << ':';
        write_expr(out, m, c.terms);
        switch (c.relation) {
        case Relation::LessEqual: out << " <= "; break;
        case Relation::Equal: out << " = "; break;
        case Relation::GreaterEqual: out << " >= "; break;
        }
        out << num(c.rhs) << '\n';
    }
    out << "Bounds\n";
    for (const VariableRef& v : m.variables()) {
        const std::string name = lp_safe_name(v.name);
        const bool lo_inf = std::isinf(v.lower);
        const bool hi_inf = std::isinf(v.upper);
        if (lo_inf && hi_inf) {
            out << ' ' << name << " free\n";
        } else if (v.lower == v.upper) {
            out << ' ' << name << " = " << num(v.lower) << '\n';
        } else if (lo_inf) {
            out << " -inf <= " << name << " <= " << num(v.upper) << '\n';
        } else if (hi_inf) {
            if (v.lower != 0.0) out << ' ' << name << " >= " << num(v.lower) << '\n';
        } else {
            out << ' ' << num(v.lower) << " <= " << name << " <= " << num(v.upper) << '\n';
        }
    }
    bool any_binary = false;
    for (const VariableRef& v : m.variables()) {
        if (v.integrality != Integrality::Binary) continue;
        if (!any_binary) out << "Binaries\n";
        any_binary = true;
        out << ' ' << lp_safe_name(v.name) << '\n';
    }
    out << "End\n";
}

void write_lp(const MilpProblem& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    write_lp(model, out);
}

} // namespace h2pf
