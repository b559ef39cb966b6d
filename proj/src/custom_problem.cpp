#include "fraccal/experiment.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string_view>

namespace fraccal {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    for (auto& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double parse_number(const std::string& s, const std::string& where) {
    const std::string t = trim(s);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw UsageError(where + ": expected a number, got '" + t + "'");
    return v;
}

// '+' separates terms unless it belongs to an exponent (1e+3) or sits inside parentheses
std::vector<std::string> split_terms(const std::string& expr) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        const char c = expr[i];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        const bool exponent = i >= 2 && (expr[i - 1] == 'e' || expr[i - 1] == 'E') &&
                              (std::isdigit(static_cast<unsigned char>(expr[i - 2])) || expr[i - 2] == '.');
        if (c == '+' && depth == 0 && !exponent) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

// param := number | alpha | number (+|-) alpha
void parse_param(const std::string& text, CustomProblem::Term& t, const std::string& where) {
    std::string s = lower(trim(text));
    if (s == "alpha") {
        t.param = 0.0;
        t.alpha_sign = 1;
        return;
    }
    const auto pos = s.rfind("alpha");
    if (pos != std::string::npos && pos + 5 == s.size()) {
        std::string head = trim(s.substr(0, pos));
        if (head.empty() || (head.back() != '+' && head.back() != '-'))
            throw UsageError(where + ": bad parameter '" + text + "'");
        t.alpha_sign = head.back() == '+' ? 1 : -1;
        head.pop_back();
        t.param = parse_number(head, where);
        return;
    }
    t.param = parse_number(s, where);
}

std::vector<CustomProblem::Term> parse_terms(const std::string& expr, const std::string& where) {
    std::vector<CustomProblem::Term> terms;
    for (const auto& raw : split_terms(expr)) {
        std::string s = trim(raw);
        if (s.empty())
            throw UsageError(where + ": empty term in '" + expr + "'");
        CustomProblem::Term t;
        if (const auto star = s.find('*'); star != std::string::npos) {
            t.coef = parse_number(s.substr(0, star), where);
            s = trim(s.substr(star + 1));
        }
        std::string name = s;
        std::string param;
        if (const auto open = s.find('('); open != std::string::npos) {
            if (s.back() != ')')
                throw UsageError(where + ": missing ')' in '" + s + "'");
            name = trim(s.substr(0, open));
            param = s.substr(open + 1, s.size() - open - 2);
        }
        name = lower(name);
        if (name == "power") {
            t.id = ReferenceId::POWER;
            if (param.empty())
                throw UsageError(where + ": power needs an exponent, e.g. power(2+alpha)");
        } else if (name == "exp") {
            t.id = ReferenceId::EXP;
            t.param = 1.0;
        } else if (name == "sin") {
            t.id = ReferenceId::SIN;
        } else if (name == "cos") {
            t.id = ReferenceId::COS;
        } else if (name == "x3lnx") {
            t.id = ReferenceId::X3LNX;
        } else if (name == "linear" || name == "x") {
            t.id = ReferenceId::LINEAR;
        } else if (name == "const" || name == "1") {
            t.id = ReferenceId::CONST;
        } else {
            throw UsageError(where + ": unknown function '" + name +
                             "' (known: power, exp, sin, cos, x3lnx, linear, const)");
        }
        if (!param.empty()) {
            if (t.id != ReferenceId::POWER && t.id != ReferenceId::EXP)
                throw UsageError(where + ": '" + name + "' takes no parameter");
            parse_param(param, t, where);
        }
        terms.push_back(t);
    }
    return terms;
}

} // namespace

CustomProblem parse_custom_problem(const std::string& text, const std::string& source) {
    CustomProblem p;
    p.source = source;
    bool have_type = false, have_y = false, have_z = false;
    bool have_coupling = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = source + ":" + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(where + ": expected key = value");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "type") {
            const std::string v = lower(value);
            if (v != "scalar" && v != "system")
                throw UsageError(where + ": type must be scalar or system");
            p.system = v == "system";
            have_type = true;
        } else if (key == "alpha") {
            std::istringstream list(value);
            std::string item;
            while (std::getline(list, item, ','))
                p.alphas.push_back(parse_number(item, where));
        } else if (key == "l") {
            p.L = parse_number(value, where);
        } else if (key == "a" || key == "b" || key == "c" || key == "d") {
            const double v = parse_number(value, where);
            (key == "a" ? p.A : key == "b" ? p.B : key == "c" ? p.C : p.D) = v;
            have_coupling = true;
        } else if (key == "y" || key == "solution") {
            p.solution = parse_terms(value, where);
            have_y = true;
        } else if (key == "z") {
            p.solution_z = parse_terms(value, where);
            have_z = true;
        } else {
            throw UsageError(where + ": unknown key '" + key + "'");
        }
    }
    if (!have_type)
        p.system = have_z || have_coupling;
    if (!have_y)
        throw UsageError(source + ": missing exact solution `y = ...`");
    if (p.system && !have_z)
        throw UsageError(source + ": system problems need `z = ...`");
    if (!p.system && have_z)
        throw UsageError(source + ": `z` given for a scalar problem");
    return p;
}

CustomProblem load_custom_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open problem file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_custom_problem(ss.str(), path);
}

ReferenceSum realize_terms(const std::vector<CustomProblem::Term>& terms, FractionalOrder alpha) {
    ReferenceSum sum;
    for (const auto& t : terms) {
        const double param = t.param + t.alpha_sign * alpha;
        if (t.id == ReferenceId::POWER && !(param > 0.0))
            throw UsageError("power exponent must be positive, got " + std::to_string(param));
        sum.terms.push_back({t.coef, ReferenceFunction{t.id, param}});
    }
    return sum;
}

} // namespace fraccal
