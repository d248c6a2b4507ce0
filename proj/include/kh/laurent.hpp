#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace kh {

// Integer Laurent polynomial in one variable. Only nonzero coefficients are stored.
class Laurent {
  public:
    using coeff_map = std::map<int, long long>;

    Laurent() = default;

    static Laurent monomial(long long c, int e) {
        Laurent p;
        p.add(e, c);
        return p;
    }
    static Laurent constant(long long c) { return monomial(c, 0); }

    void add(int e, long long c) {
        if (c == 0)
            return;
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0)
                coeffs_.erase(it);
        }
    }

    long long coeff(int e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? 0 : it->second;
    }

    const coeff_map& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    int min_exp() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
    int max_exp() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    Laurent operator+(const Laurent& o) const {
        Laurent r = *this;
        for (auto& [e, c] : o.coeffs_)
            r.add(e, c);
        return r;
    }
    Laurent operator-(const Laurent& o) const {
        Laurent r = *this;
        for (auto& [e, c] : o.coeffs_)
            r.add(e, -c);
        return r;
    }
    Laurent operator*(const Laurent& o) const {
        Laurent r;
        for (auto& [e1, c1] : coeffs_)
            for (auto& [e2, c2] : o.coeffs_)
                r.add(e1 + e2, c1 * c2);
        return r;
    }
    Laurent operator*(long long s) const {
        Laurent r;
        if (s != 0)
            for (auto& [e, c] : coeffs_)
                r.add(e, c * s);
        return r;
    }
    bool operator==(const Laurent& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    // All coefficients divisible by k.
    bool divisible_by(long long k) const {
        for (auto& [e, c] : coeffs_)
            if (c % k != 0)
                return false;
        return true;
    }

    // Renders like "2 + t^-2 + t^-3"; descending exponents.
    std::string str(const std::string& var) const {
        if (coeffs_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            long long c = it->second;
            int e = it->first;
            if (first) {
                if (c < 0)
                    os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            long long a = c < 0 ? -c : c;
            if (a != 1 || e == 0)
                os << a;
            if (e != 0) {
                if (a != 1)
                    os << "*";
                os << var;
                if (e != 1)
                    os << "^" << e;
            }
        }
        return os.str();
    }

  private:
    coeff_map coeffs_;
};

// Integer Laurent polynomial in t (first exponent) and q (second).
class BigradedLaurent {
  public:
    using key = std::pair<int, int>;
    using coeff_map = std::map<key, long long>;

    BigradedLaurent() = default;

    void add(int i, int j, long long c) {
        if (c == 0)
            return;
        key k{i, j};
        auto it = coeffs_.find(k);
        if (it == coeffs_.end()) {
            coeffs_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0)
                coeffs_.erase(it);
        }
    }

    long long coeff(int i, int j) const {
        auto it = coeffs_.find({i, j});
        return it == coeffs_.end() ? 0 : it->second;
    }

    const coeff_map& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    BigradedLaurent operator*(const BigradedLaurent& o) const {
        BigradedLaurent r;
        for (auto& [k1, c1] : coeffs_)
            for (auto& [k2, c2] : o.coeffs_)
                r.add(k1.first + k2.first, k1.second + k2.second, c1 * c2);
        return r;
    }
    bool operator==(const BigradedLaurent& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const BigradedLaurent& o) const { return !(*this == o); }

    // Substitute t = -1 (graded Euler characteristic in q).
    Laurent at_t_minus_one() const {
        Laurent r;
        for (auto& [k, c] : coeffs_)
            r.add(k.second, (k.first % 2 == 0) ? c : -c);
        return r;
    }

    // Substitute q = 1 (forget the quantum grading; polynomial in t).
    Laurent at_q_one() const {
        Laurent r;
        for (auto& [k, c] : coeffs_)
            r.add(k.first, c);
        return r;
    }

    std::string str() const {
        if (coeffs_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : coeffs_) {
            if (first) {
                if (c < 0)
                    os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            long long a = c < 0 ? -c : c;
            bool has_var = k.first != 0 || k.second != 0;
            if (a != 1 || !has_var)
                os << a;
            bool star = a != 1;
            if (k.first != 0) {
                if (star)
                    os << "*";
                os << "t";
                if (k.first != 1)
                    os << "^" << k.first;
                star = true;
            }
            if (k.second != 0) {
                if (star)
                    os << "*";
                os << "q";
                if (k.second != 1)
                    os << "^" << k.second;
            }
        }
        return os.str();
    }

  private:
    coeff_map coeffs_;
};

}
