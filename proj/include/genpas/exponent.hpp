#pragma once

#include <string>

namespace genpas {

/**
 * Extended-real exponent: a finite double or a symbolic infinity.
 * Infinities are never produced by arithmetic; they select arg-max/arg-min
 * point masses in the weighting code.
 */
class ExtExponent {
public:
    enum class Kind { Finite, PosInf, NegInf };

    ExtExponent() : kind_(Kind::Finite), value_(0.0) {}

    static ExtExponent finite(double v);
    static ExtExponent pos_inf() { return ExtExponent(Kind::PosInf, 0.0); }
    static ExtExponent neg_inf() { return ExtExponent(Kind::NegInf, 0.0); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    /** Finite value; throws on infinities. */
    double value() const;

    bool operator==(const ExtExponent& o) const {
        return kind_ == o.kind_ && (kind_ != Kind::Finite || value_ == o.value_);
    }
    bool operator!=(const ExtExponent& o) const { return !(*this == o); }

    /** "1.5", "inf", "-inf" (accepts leading +, "+inf", decimal or integer text). */
    static ExtExponent parse(const std::string& text);
    std::string str() const;

private:
    ExtExponent(Kind k, double v) : kind_(k), value_(v) {}
    Kind kind_;
    double value_;
};

/** The (alpha, beta, gamma) triple defining a sampling configuration. */
struct AugConfig {
    ExtExponent alpha;
    ExtExponent beta;
    ExtExponent gamma;

    bool operator==(const AugConfig& o) const {
        return alpha == o.alpha && beta == o.beta && gamma == o.gamma;
    }
    /** "(1,0,-inf)" - the rendering used in report files. */
    std::string str() const;
    /** Parses the str() form (surrounding parentheses optional). */
    static AugConfig parse(const std::string& text);
};

}  // namespace genpas
