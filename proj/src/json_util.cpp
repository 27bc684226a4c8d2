#include "qfermat/json_util.hpp"

#include "qfermat/error.hpp"

#include <cctype>

namespace qfermat::json {

namespace {

// Control-character prefix; cannot occur in text produced from real data.
constexpr const char* kBigTag = "\x01" "bigint:";
constexpr const char* kBigTagEscaped = "\"\\u0001bigint:";

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

class ExactSax {
public:
    explicit ExactSax(Json& root) : dom_(root) {}

    bool null() { return dom_.null(); }
    bool boolean(bool v) { return dom_.boolean(v); }
    bool number_integer(Json::number_integer_t v) { return dom_.number_integer(v); }
    bool number_unsigned(Json::number_unsigned_t v) { return dom_.number_unsigned(v); }
    bool number_float(Json::number_float_t v, const std::string& literal) {
        if (is_integer_literal(literal)) {
            std::string s = kBigTag + literal;
            return dom_.string(s);
        }
        return dom_.number_float(v, literal);
    }
    bool string(std::string& v) { return dom_.string(v); }
    bool binary(Json::binary_t& v) { return dom_.binary(v); }
    bool start_object(std::size_t n) { return dom_.start_object(n); }
    bool key(std::string& k) { return dom_.key(k); }
    bool end_object() { return dom_.end_object(); }
    bool start_array(std::size_t n) { return dom_.start_array(n); }
    bool end_array() { return dom_.end_array(); }
    bool parse_error(std::size_t pos, const std::string& token, const nlohmann::detail::exception& ex) {
        throw ParseError("JSON syntax error at byte " + std::to_string(pos) + " near '" + token + "': " + ex.what());
    }

private:
    nlohmann::detail::json_sax_dom_parser<Json> dom_;
};

}  // namespace

Json parse_exact(const std::string& text) {
    Json root;
    ExactSax sax(root);
    if (!Json::sax_parse(text, &sax)) throw ParseError("malformed JSON document");
    return root;
}

Integer to_integer(const Json& v, const std::string& what) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()), 10);
        return Integer(std::to_string(v.get<std::int64_t>()), 10);
    }
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.rfind(kBigTag, 0) == 0) s.erase(0, std::char_traits<char>::length(kBigTag));
        if (is_integer_literal(s)) return Integer(s, 10);
    }
    throw ParseError(what + ": expected an integer, got " + v.dump());
}

Json big_integer(const Integer& n) {
    if (mpz_fits_slong_p(n.get_mpz_t())) return Json(static_cast<std::int64_t>(n.get_si()));
    return Json(std::string(kBigTag) + n.get_str());
}

std::string dump_exact(const Json& v, int indent) {
    std::string text = v.dump(indent);
    const std::string tag = kBigTagEscaped;
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    for (;;) {
        std::size_t hit = text.find(tag, pos);
        if (hit == std::string::npos) {
            out.append(text, pos, std::string::npos);
            break;
        }
        out.append(text, pos, hit - pos);
        std::size_t start = hit + tag.size();
        std::size_t end = text.find('"', start);
        out.append(text, start, end - start);
        pos = end + 1;
    }
    return out;
}

}  // namespace qfermat::json
