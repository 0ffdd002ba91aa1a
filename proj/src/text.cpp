#include "ratinterp/text.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ratinterp {

using nlohmann::json;

std::string format_poly(const MultiPoly &p)
{
    if (p.is_zero()) {
        return "(0)";
    }
    std::string out = "(";
    bool first = true;
    for (const auto &t : p.terms()) {
        if (!first && t.coef > 0) {
            out += '+';
        }
        first = false;
        out += t.coef.get_str();
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            out += "*x" + std::to_string(i + 1) + '^' + std::to_string(t.exps[i]);
        }
    }
    out += ')';
    return out;
}

std::string format_rational(const RationalFunction &h)
{
    return format_poly(h.num()) + '/' + format_poly(h.den());
}

namespace {

[[noreturn]] void parse_error(std::string_view text, std::size_t pos, const std::string &what)
{
    throw Error(ErrorCode::Parse, what + " at offset " + std::to_string(pos) + " in \"" + std::string(text) + '"');
}

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    MultiPoly run(std::optional<std::size_t> nvars)
    {
        parse_sum();
        skip_ws();
        if (pos_ != text_.size()) {
            parse_error(text_, pos_, "unexpected character");
        }
        const std::size_t n = nvars.value_or(std::max<std::size_t>(max_var_, 1));
        if (n < 1) {
            parse_error(text_, 0, "polynomial needs at least one variable");
        }
        if (max_var_ > n) {
            parse_error(text_, 0, "variable x" + std::to_string(max_var_) + " exceeds n = " + std::to_string(n));
        }
        std::vector<MultiTerm> terms;
        terms.reserve(raw_.size());
        for (auto &[coef, vars] : raw_) {
            std::vector<Exponent> exps(n, 0);
            for (const auto &[v, e] : vars) {
                exps[v - 1] = e;
            }
            terms.push_back({std::move(coef), std::move(exps)});
        }
        return MultiPoly::from_terms(n, std::move(terms));
    }

private:
    using RawTerm = std::pair<Integer, std::map<std::size_t, Exponent>>;

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool peek_digit()
    {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::string_view digits()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            parse_error(text_, pos_, "expected digits");
        }
        return text_.substr(start, pos_ - start);
    }

    std::uint64_t small_number()
    {
        const std::size_t at = pos_;
        const auto d = digits();
        if (d.size() > 19) {
            parse_error(text_, at, "number too large");
        }
        const std::uint64_t v = std::stoull(std::string(d));
        if (v > kMaxExponent) {
            parse_error(text_, at, "number exceeds 2^62");
        }
        return v;
    }

    void parse_sum()
    {
        if (peek('(')) {
            ++pos_;
            parse_sum();
            if (!peek(')')) {
                parse_error(text_, pos_, "expected ')'");
            }
            ++pos_;
            return;
        }
        bool negative = false;
        if (peek('-') || peek('+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        parse_term(negative);
        while (peek('+') || peek('-')) {
            negative = text_[pos_] == '-';
            ++pos_;
            parse_term(negative);
        }
    }

    void parse_term(bool negative)
    {
        RawTerm term{Integer(1), {}};
        bool need_factor = true;
        if (peek_digit()) {
            const std::size_t at = pos_;
            if (term.first.set_str(std::string(digits()), 10) != 0) {
                parse_error(text_, at, "bad integer");
            }
            need_factor = false;
            if (peek('*')) {
                ++pos_;
                need_factor = true;
            } else if (!peek('x')) {
                finish_term(std::move(term), negative);
                return;
            }
        }
        if (need_factor || peek('x')) {
            parse_factor(term);
        }
        while (peek('*')) {
            ++pos_;
            parse_factor(term);
        }
        finish_term(std::move(term), negative);
    }

    void parse_factor(RawTerm &term)
    {
        if (!peek('x')) {
            parse_error(text_, pos_, "expected a variable x<k>");
        }
        ++pos_;
        const std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            parse_error(text_, at, "variable needs an index");
        }
        const std::uint64_t index = small_number();
        if (index < 1) {
            parse_error(text_, at, "variable indices start at 1");
        }
        Exponent e = 1;
        if (peek('^')) {
            ++pos_;
            e = small_number();
        }
        Exponent &slot = term.second[index];
        slot = checked_exponent(slot + e);
        max_var_ = std::max<std::size_t>(max_var_, index);
    }

    void finish_term(RawTerm term, bool negative)
    {
        if (negative) {
            term.first = -term.first;
        }
        raw_.push_back(std::move(term));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t max_var_ = 0;
    std::vector<RawTerm> raw_;
};

std::size_t top_level_slash(std::string_view text)
{
    int depth = 0;
    std::size_t found = std::string_view::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        } else if (c == '/' && depth == 0) {
            if (found != std::string_view::npos) {
                parse_error(text, i, "more than one '/'");
            }
            found = i;
        }
    }
    return found;
}

std::size_t max_index(const MultiPoly &p)
{
    std::size_t top = 0;
    for (const auto &t : p.terms()) {
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            if (t.exps[i] > 0) {
                top = std::max(top, i + 1);
            }
        }
    }
    return top;
}

MultiPoly terms_from_json(const json &arr, std::size_t n, const char *field)
{
    const std::string where = std::string("spec file: ") + field;
    if (!arr.is_array()) {
        throw Error(ErrorCode::Parse, where + " must be an array of terms");
    }
    std::vector<MultiTerm> terms;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const json &t = arr[k];
        const std::string at = where + "[" + std::to_string(k) + "]";
        if (!t.is_object() || !t.contains("c") || !t.contains("e")) {
            throw Error(ErrorCode::Parse, at + " needs fields \"c\" and \"e\"");
        }
        if (!t["c"].is_string()) {
            throw Error(ErrorCode::Parse, at + ".c must be a decimal string");
        }
        const std::string cs = t["c"].get<std::string>();
        Integer c;
        const bool digits_only = !cs.empty() && cs.find_first_not_of("0123456789", cs[0] == '-' ? 1 : 0) == std::string::npos
            && cs != "-";
        if (!digits_only || c.set_str(cs, 10) != 0) {
            throw Error(ErrorCode::Parse, at + ".c is not a decimal integer: \"" + cs + '"');
        }
        const json &e = t["e"];
        if (!e.is_array() || e.size() != n) {
            throw Error(ErrorCode::Parse, at + ".e must be an array of length n = " + std::to_string(n));
        }
        std::vector<Exponent> exps;
        for (const auto &x : e) {
            if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() >= 0)) {
                throw Error(ErrorCode::Parse, at + ".e entries must be nonnegative integers");
            }
            const auto v = x.get<std::uint64_t>();
            if (v > kMaxExponent) {
                throw Error(ErrorCode::Parse, at + ".e entry exceeds 2^62");
            }
            exps.push_back(v);
        }
        terms.push_back({std::move(c), std::move(exps)});
    }
    return MultiPoly::from_terms(n, std::move(terms));
}

json terms_to_json(const MultiPoly &p)
{
    json arr = json::array();
    for (const auto &t : p.terms()) {
        arr.push_back({{"c", t.coef.get_str()}, {"e", t.exps}});
    }
    return arr;
}

} // namespace

MultiPoly parse_poly(std::string_view text, std::optional<std::size_t> nvars)
{
    return PolyParser(text).run(nvars);
}

RationalFunction parse_rational(std::string_view text, std::optional<std::size_t> nvars)
{
    const std::size_t slash = top_level_slash(text);
    if (slash == std::string_view::npos) {
        MultiPoly num = parse_poly(text, nvars);
        const std::size_t n = num.nvars();
        return canonicalize(std::move(num), MultiPoly::constant(n, 1));
    }
    MultiPoly num = parse_poly(text.substr(0, slash), nvars);
    MultiPoly den = parse_poly(text.substr(slash + 1), nvars);
    if (!nvars && num.nvars() != den.nvars()) {
        const std::size_t n = std::max({max_index(num), max_index(den), std::size_t{1}});
        num = parse_poly(text.substr(0, slash), n);
        den = parse_poly(text.substr(slash + 1), n);
    }
    return canonicalize(std::move(num), std::move(den));
}

FunctionSpec parse_function_spec(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::Parse, std::string("spec file: ") + e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorCode::Parse, "spec file: top level must be an object");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() < 1) {
        throw Error(ErrorCode::Parse, "spec file: \"n\" must be a positive integer");
    }
    const auto n = doc["n"].get<std::size_t>();
    for (const char *field : {"numerator", "denominator"}) {
        if (!doc.contains(field)) {
            throw Error(ErrorCode::Parse, std::string("spec file: missing \"") + field + '"');
        }
    }
    FunctionSpec spec{terms_from_json(doc["numerator"], n, "numerator"),
                      terms_from_json(doc["denominator"], n, "denominator")};
    if (spec.den.is_zero()) {
        throw Error(ErrorCode::ZeroDenominator, "spec file: denominator is zero");
    }
    return spec;
}

FunctionSpec load_function_spec(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Parse, "cannot open spec file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_function_spec(buf.str());
}

std::string dump_function_spec(const MultiPoly &num, const MultiPoly &den)
{
    json doc{{"n", num.nvars()}, {"numerator", terms_to_json(num)}, {"denominator", terms_to_json(den)}};
    return doc.dump();
}

} // namespace ratinterp
