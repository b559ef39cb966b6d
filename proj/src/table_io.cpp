#include "fraccal/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace fraccal {

namespace {

constexpr std::string_view kDash = "—";

// "2.9110e-05" -> "2.9110e-5"
std::string compact_exponent(std::string s) {
    const auto e = s.find_first_of("eE");
    if (e == std::string::npos)
        return s;
    std::string mant = s.substr(0, e);
    std::string exp = s.substr(e + 1);
    bool neg = false;
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
        neg = exp[0] == '-';
        exp.erase(0, 1);
    }
    const auto nz = exp.find_first_not_of('0');
    exp = nz == std::string::npos ? "0" : exp.substr(nz);
    return mant + "e" + (neg ? "-" : "") + exp;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double to_number(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw InputError("parse_table: bad number '" + s + "'");
    return v;
}

std::optional<double> to_order(const std::string& s) {
    if (s.empty() || s == kDash)
        return std::nullopt;
    return to_number(s);
}

void sort_rows(std::vector<TableRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
        if (a.alpha != b.alpha)
            return a.alpha < b.alpha;
        return a.h > b.h;
    });
}

} // namespace

std::string format_error(double e) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4e", e);
    return compact_exponent(buf);
}

std::string format_order(double o) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", o);
    return buf;
}

std::string format_step(double h) {
    char buf[48];
    const auto r = std::to_chars(buf, buf + sizeof buf, h, std::chars_format::scientific);
    return compact_exponent(std::string(buf, r.ptr));
}

std::string format_alpha(double a) {
    char buf[48];
    const auto r = std::to_chars(buf, buf + sizeof buf, a);
    return std::string(buf, r.ptr);
}

std::string emit_table(const ConvergenceTable& t, OutputFormat format) {
    if (t.rows.empty())
        throw InputError("emit_table: no rows");
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "alpha,h,max_error,order\n";
        for (const auto& r : t.rows) {
            os << format_alpha(r.alpha) << ',' << format_step(r.h) << ',' << format_error(r.max_error)
               << ',';
            if (r.order)
                os << format_order(*r.order);
            os << '\n';
        }
        return os.str();
    }

    // one row per h, one (error, order) column pair per alpha
    std::vector<double> alphas;
    std::vector<double> steps;
    std::map<std::pair<double, double>, const TableRow*> cell;
    for (const auto& r : t.rows) {
        if (std::find(alphas.begin(), alphas.end(), r.alpha) == alphas.end())
            alphas.push_back(r.alpha);
        if (std::find(steps.begin(), steps.end(), r.h) == steps.end())
            steps.push_back(r.h);
        cell[{r.alpha, r.h}] = &r;
    }
    std::sort(alphas.begin(), alphas.end());
    std::sort(steps.begin(), steps.end(), std::greater<>());

    if (!t.caption.empty())
        os << t.caption << "\n\n";
    os << "| h |";
    for (double a : alphas)
        os << " alpha=" << format_alpha(a) << " error | order |";
    os << "\n|---|";
    for (std::size_t i = 0; i < alphas.size(); ++i)
        os << "---|---|";
    os << '\n';
    for (double h : steps) {
        os << "| " << format_step(h) << " |";
        for (double a : alphas) {
            const auto it = cell.find({a, h});
            if (it == cell.end()) {
                os << "  |  |";
                continue;
            }
            const auto& r = *it->second;
            os << ' ' << format_error(r.max_error) << " | "
               << (r.order ? format_order(*r.order) : std::string(kDash)) << " |";
        }
        os << '\n';
    }
    return os.str();
}

ConvergenceTable parse_table(const std::string& text) {
    ConvergenceTable t;
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line))
        if (!trim(line).empty())
            lines.push_back(trim(line));
    if (lines.empty())
        throw InputError("parse_table: empty input");

    if (lines[0] == "alpha,h,max_error,order") {
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const auto f = split(lines[i], ',');
            if (f.size() != 4)
                throw InputError("parse_table: expected 4 csv fields in '" + lines[i] + "'");
            t.rows.push_back({to_number(f[0]), to_number(f[1]), to_number(f[2]), to_order(f[3])});
        }
        sort_rows(t.rows);
        return t;
    }

    std::vector<double> alphas;
    bool in_table = false;
    for (const auto& l : lines) {
        if (l.front() != '|') {
            if (!in_table)
                t.caption = l;
            continue;
        }
        // strip the outer pipes
        auto cells = split(l.substr(1, l.size() - 2), '|');
        if (!in_table) {
            in_table = true;
            for (const auto& c : cells) {
                const auto eq = c.find("alpha=");
                if (eq == std::string::npos)
                    continue;
                const auto sp = c.find(' ', eq);
                alphas.push_back(to_number(c.substr(eq + 6, sp - eq - 6)));
            }
            continue;
        }
        if (cells.empty() || cells[0].rfind("---", 0) == 0)
            continue;
        if (cells.size() != 1 + 2 * alphas.size())
            throw InputError("parse_table: wrong cell count in '" + l + "'");
        const double h = to_number(cells[0]);
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            const auto& e = cells[1 + 2 * i];
            if (e.empty())
                continue;
            t.rows.push_back({alphas[i], h, to_number(e), to_order(cells[2 + 2 * i])});
        }
    }
    if (!in_table)
        throw InputError("parse_table: no csv header or markdown table found");
    sort_rows(t.rows);
    return t;
}

} // namespace fraccal
