#include "genpas/exponent.hpp"

#include <cmath>
#include <cstdlib>

#include "genpas/common.hpp"

namespace genpas {

ExtExponent ExtExponent::finite(double v) {
    if (!std::isfinite(v)) throw UsageError("finite exponent required, got non-finite value");
    return ExtExponent(Kind::Finite, v);
}

double ExtExponent::value() const {
    if (kind_ != Kind::Finite) throw Error("infinite exponent has no finite value");
    return value_;
}

ExtExponent ExtExponent::parse(const std::string& text) {
    std::string t = text;
    // trim ascii whitespace
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
    if (t == "inf" || t == "+inf") return pos_inf();
    if (t == "-inf") return neg_inf();
    if (t.empty()) throw UsageError("empty exponent");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == nullptr || *end != '\0')
        throw UsageError("cannot parse exponent '" + text + "' (expected a number, inf or -inf)");
    return finite(v);
}

std::string ExtExponent::str() const {
    switch (kind_) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        default: return format_double(value_);
    }
}

std::string AugConfig::str() const {
    return "(" + alpha.str() + "," + beta.str() + "," + gamma.str() + ")";
}

AugConfig AugConfig::parse(const std::string& text) {
    std::string t = text;
    if (!t.empty() && t.front() == '(') t.erase(t.begin());
    if (!t.empty() && t.back() == ')') t.pop_back();
    std::size_t c1 = t.find(',');
    std::size_t c2 = (c1 == std::string::npos) ? std::string::npos : t.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw UsageError("cannot parse config '" + text + "' (expected alpha,beta,gamma)");
    return AugConfig{ExtExponent::parse(t.substr(0, c1)),
                     ExtExponent::parse(t.substr(c1 + 1, c2 - c1 - 1)),
                     ExtExponent::parse(t.substr(c2 + 1))};
}

}  // namespace genpas
