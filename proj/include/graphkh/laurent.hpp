#pragma once

#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

#include "graphkh/errors.hpp"

namespace graphkh {

/// Laurent polynomial with integer coefficients in a single named variable.
/// Exact arithmetic; zero coefficients are never stored.
class LaurentPoly {
  public:
    explicit LaurentPoly(char var = 'a') : var_(var) {}

    static LaurentPoly monomial(char var, long long coeff, int exp) {
        LaurentPoly p(var);
        if (coeff != 0) p.c_[exp] = coeff;
        return p;
    }

    static LaurentPoly constant(char var, long long value) { return monomial(var, value, 0); }

    char variable() const { return var_; }
    bool is_zero() const { return c_.empty(); }

    long long coeff(int exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? 0 : it->second;
    }

    const std::map<int, long long>& coeffs() const { return c_; }

    void add_term(int exp, long long coeff) {
        long long next = (c_.count(exp) ? c_[exp] : 0) + coeff;
        if (next == 0)
            c_.erase(exp);
        else
            c_[exp] = next;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        check_var(o);
        LaurentPoly out = *this;
        for (const auto& [e, c] : o.c_) out.add_term(e, c);
        return out;
    }

    LaurentPoly operator-(const LaurentPoly& o) const {
        check_var(o);
        LaurentPoly out = *this;
        for (const auto& [e, c] : o.c_) out.add_term(e, -c);
        return out;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        check_var(o);
        LaurentPoly out(var_);
        for (const auto& [e1, c1] : c_)
            for (const auto& [e2, c2] : o.c_) out.add_term(e1 + e2, c1 * c2);
        return out;
    }

    LaurentPoly operator*(long long k) const {
        LaurentPoly out(var_);
        if (k != 0)
            for (const auto& [e, c] : c_) out.c_[e] = c * k;
        return out;
    }

    /// Multiplication by var^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly out(var_);
        for (const auto& [e, c] : c_) out.c_[e + k] = c;
        return out;
    }

    LaurentPoly pow(unsigned k) const {
        LaurentPoly out = constant(var_, 1);
        for (unsigned i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    bool operator==(const LaurentPoly& o) const { return var_ == o.var_ && c_ == o.c_; }

    /// Human form, descending exponents: "-a^4 - a^-4", "1", "t^-1 + t^3".
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            auto [e, c] = *it;
            if (first) {
                if (c < 0) out << "-";
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            first = false;
            long long mag = std::llabs(c);
            if (mag != 1 || e == 0) out << mag;
            if (e != 0) {
                out << var_;
                if (e != 1) out << "^" << e;
            }
        }
        return out.str();
    }

  private:
    void check_var(const LaurentPoly& o) const {
        if (var_ != o.var_) throw Error("Laurent arithmetic: variables differ");
    }

    char var_;
    std::map<int, long long> c_;
};

inline LaurentPoly operator*(long long k, const LaurentPoly& p) { return p * k; }

}  // namespace graphkh
