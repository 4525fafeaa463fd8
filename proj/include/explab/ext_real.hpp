#ifndef EXPLAB_EXT_REAL_HPP
#define EXPLAB_EXT_REAL_HPP

#include <cmath>
#include <ostream>
#include <string>

#include "explab/errors.hpp"

namespace explab {

/// Extended real: -inf, a finite double, or +inf. Finite values are NaN-free.
class ExtReal {
public:
    enum class Tag { neg_inf, finite, pos_inf };

    static ExtReal neg_inf() { return ExtReal(Tag::neg_inf, 0.0); }
    static ExtReal pos_inf() { return ExtReal(Tag::pos_inf, 0.0); }
    static ExtReal finite(double v) {
        if (std::isnan(v)) raise(errc::domain, "ExtReal: NaN is not a finite value");
        if (std::isinf(v)) return v > 0 ? pos_inf() : neg_inf();
        return ExtReal(Tag::finite, v);
    }

    Tag tag() const { return tag_; }
    bool is_finite() const { return tag_ == Tag::finite; }
    bool is_pos_inf() const { return tag_ == Tag::pos_inf; }
    bool is_neg_inf() const { return tag_ == Tag::neg_inf; }

    /// Finite value; calling on an infinity is a domain error.
    double value() const {
        if (!is_finite()) raise(errc::domain, "ExtReal: value() on infinity");
        return value_;
    }

    /// Collapse to double, mapping infinities to IEEE infinities.
    double as_double() const {
        switch (tag_) {
            case Tag::neg_inf: return -std::numeric_limits<double>::infinity();
            case Tag::pos_inf: return std::numeric_limits<double>::infinity();
            default: return value_;
        }
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.tag_ != b.tag_) return false;
        return a.tag_ != Tag::finite || a.value_ == b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
        switch (x.tag_) {
            case Tag::neg_inf: return os << "-inf";
            case Tag::pos_inf: return os << "+inf";
            default: return os << x.value_;
        }
    }

private:
    ExtReal(Tag tag, double v) : tag_(tag), value_(v) {}
    Tag tag_;
    double value_;
};

}  // namespace explab

#endif
