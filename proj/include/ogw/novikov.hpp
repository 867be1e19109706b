#pragma once

// Exact arithmetic in the graded coefficient ring of the engine: formal
// series in the class symbols T^beta, the boundary-point variable s and the
// interior variables t_j, with energy-based valuation, truncation by a
// trusted cutoff, formal derivatives, the spherical (s-free) projection and
// enumeration of the filtered coefficient monoid used by the inductive
// solver.
//
// Grading conventions (n = dim L, odd):
//   deg T^beta = maslov(beta),  deg s = 1 - n,  deg t_j = 2 - deg(gamma_j).
// All generators have even degree, so the scalar ring is commutative and
// series coefficients never contribute Koszul signs.
//
// Valuation: nu(T^beta s^k prod t_j^{l_j}) = energy(beta) + k + sum l_j.
// A series with cutoff E is trusted modulo the filtration ideal
// F^E = { nu > E }: stored monomials satisfy nu <= E and coefficients of
// monomials beyond E are not computable from the stored data.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ogw/errors.hpp"
#include "ogw/rational.hpp"

namespace ogw {

// One generator of the degree group: a disk class with its energy, Maslov
// index, sphericity flag and the pairing numbers (integral of each interior
// class over the generator).
struct ClassGenerator {
    std::string id;
    Rational energy;
    long maslov = 0;
    bool spherical = false;
    std::vector<Rational> pairings;  // indexed by interior class
};

// An interior cohomology class gamma_j: even degree, optionally the unit
// (degree 0, the constant function 1) or a divisor class (degree 2).
struct InteriorClass {
    std::string id;
    int degree = 0;
    bool unit = false;
    bool divisor = false;
};

// Exponent vector of one monomial T^beta s^{s_exp} prod t_j^{t[j]}.
struct Monomial {
    int s = 0;
    std::vector<int> t;
    std::vector<int> beta;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    bool is_identity() const {
        if (s != 0) return false;
        for (int e : t)
            if (e != 0) return false;
        for (int e : beta)
            if (e != 0) return false;
        return true;
    }
};

// Sparse exact series.  `terms` holds nonzero coefficients only; `cutoff`
// (absent = exact) is the trusted filtration level.
struct Series {
    std::map<Monomial, Rational> terms;
    std::optional<Rational> cutoff;

    bool is_zero() const { return terms.empty(); }
};

// Monoid of coefficient monomials enumerated with nondecreasing valuation.
// elements[0] is the identity; level_values are the distinct valuations
// E_0 = 0 < E_1 < ...; level_ends[l] is the index of the last element with
// valuation E_l, so level l+1 introduces indices (level_ends[l],
// level_ends[l+1]].
struct FilteredMonoid {
    std::vector<Monomial> elements;
    std::vector<Rational> level_values;
    std::vector<std::size_t> level_ends;
    std::map<Monomial, std::size_t> index;

    std::size_t levels() const { return level_values.size(); }
};

inline std::optional<Rational> min_cutoff(const std::optional<Rational>& a,
                                          const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

class NovikovRing {
  public:
    NovikovRing(int n, std::vector<InteriorClass> interior,
                std::vector<ClassGenerator> classes)
        : n_(n), interior_(std::move(interior)), classes_(std::move(classes)) {
        if (n_ < 1 || n_ % 2 == 0)
            throw ConfigError("dimension must be odd and positive, got " +
                              std::to_string(n_));
        std::set<std::string> seen;
        int units = 0;
        for (const auto& g : interior_) {
            if (g.id.empty() || !seen.insert(g.id).second)
                throw ConfigError("interior class ids must be unique and nonempty");
            if (g.degree < 0 || g.degree % 2 != 0)
                throw ConfigError("interior class '" + g.id +
                                  "' must have even nonnegative degree");
            if (g.unit && g.degree != 0)
                throw ConfigError("unit interior class '" + g.id +
                                  "' must have degree 0");
            if (g.divisor && g.degree != 2)
                throw ConfigError("divisor interior class '" + g.id +
                                  "' must have degree 2");
            units += g.unit ? 1 : 0;
        }
        if (units > 1) throw ConfigError("at most one unit interior class");
        seen.clear();
        for (auto& c : classes_) {
            if (c.id.empty() || !seen.insert(c.id).second)
                throw ConfigError("class ids must be unique and nonempty");
            if (c.energy <= 0)
                throw ConfigError("class '" + c.id + "' must have positive energy");
            if (c.maslov % 2 != 0)
                throw ConfigError("class '" + c.id + "' must have even Maslov index");
            c.pairings.resize(interior_.size(), Rational(0));
            for (std::size_t j = 0; j < interior_.size(); ++j) {
                if (!interior_[j].divisor && c.pairings[j] != 0)
                    throw ConfigError("nonzero pairing stored for non-divisor class '" +
                                      interior_[j].id + "'");
            }
        }
    }

    int n() const { return n_; }
    const std::vector<InteriorClass>& interior() const { return interior_; }
    const std::vector<ClassGenerator>& classes() const { return classes_; }

    int interior_index(const std::string& id) const {
        for (std::size_t j = 0; j < interior_.size(); ++j)
            if (interior_[j].id == id) return static_cast<int>(j);
        throw ConfigError("unknown interior class '" + id + "'");
    }
    int class_index(const std::string& id) const {
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (classes_[i].id == id) return static_cast<int>(i);
        throw ConfigError("unknown class '" + id + "'");
    }
    std::optional<int> unit_interior_index() const {
        for (std::size_t j = 0; j < interior_.size(); ++j)
            if (interior_[j].unit) return static_cast<int>(j);
        return std::nullopt;
    }

    // ----- monomials ------------------------------------------------------

    Monomial one() const {
        Monomial m;
        m.t.assign(interior_.size(), 0);
        m.beta.assign(classes_.size(), 0);
        return m;
    }
    Monomial s_pow(int k) const {
        Monomial m = one();
        m.s = k;
        return m;
    }
    Monomial t_unit(int j) const {
        Monomial m = one();
        m.t.at(j) = 1;
        return m;
    }
    Monomial class_unit(int i) const {
        Monomial m = one();
        m.beta.at(i) = 1;
        return m;
    }
    Monomial make(int s, std::vector<int> t, std::vector<int> beta) const {
        if (t.size() != interior_.size() || beta.size() != classes_.size())
            throw ConfigError("monomial exponent vector sizes do not match the ring");
        Monomial m;
        m.s = s;
        m.t = std::move(t);
        m.beta = std::move(beta);
        return m;
    }

    Monomial mul(const Monomial& a, const Monomial& b) const {
        Monomial r = a;
        r.s += b.s;
        for (std::size_t j = 0; j < r.t.size(); ++j) r.t[j] += b.t[j];
        for (std::size_t i = 0; i < r.beta.size(); ++i) r.beta[i] += b.beta[i];
        return r;
    }

    Rational energy(const Monomial& m) const {
        Rational e = 0;
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (m.beta[i] != 0) e += Rational(m.beta[i]) * classes_[i].energy;
        return e;
    }
    long maslov(const Monomial& m) const {
        long mu = 0;
        for (std::size_t i = 0; i < classes_.size(); ++i)
            mu += static_cast<long>(m.beta[i]) * classes_[i].maslov;
        return mu;
    }
    Rational valuation(const Monomial& m) const {
        Rational v = energy(m) + m.s;
        for (int e : m.t) v += e;
        return v;
    }
    long degree(const Monomial& m) const {
        long d = maslov(m) + static_cast<long>(m.s) * (1 - n_);
        for (std::size_t j = 0; j < interior_.size(); ++j)
            d += static_cast<long>(m.t[j]) * (2 - interior_[j].degree);
        return d;
    }
    // The class part of a monomial is spherical when every generator it uses
    // is spherical (the zero class vacuously is).
    bool spherical(const Monomial& m) const {
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (m.beta[i] != 0 && !classes_[i].spherical) return false;
        return true;
    }
    // Integral of interior class j over the class part of the monomial
    // (additive in the class).
    Rational class_pairing(const Monomial& m, int j) const {
        Rational p = 0;
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (m.beta[i] != 0)
                p += Rational(m.beta[i]) * classes_[i].pairings.at(j);
        return p;
    }

    // ----- series construction --------------------------------------------

    Series zero(std::optional<Rational> cutoff = std::nullopt) const {
        Series f;
        f.cutoff = std::move(cutoff);
        return f;
    }
    Series monomial_series(const Monomial& m, const Rational& c,
                           std::optional<Rational> cutoff = std::nullopt) const {
        Series f;
        f.cutoff = std::move(cutoff);
        if (c != 0 && (!f.cutoff || valuation(m) <= *f.cutoff)) f.terms[m] = c;
        return f;
    }
    Series scalar(const Rational& c,
                  std::optional<Rational> cutoff = std::nullopt) const {
        return monomial_series(one(), c, std::move(cutoff));
    }
    Series from_terms(const std::vector<std::pair<Monomial, Rational>>& ts,
                      std::optional<Rational> cutoff = std::nullopt) const {
        Series f;
        f.cutoff = std::move(cutoff);
        for (const auto& [m, c] : ts) {
            if (c == 0) continue;
            if (f.cutoff && valuation(m) > *f.cutoff) continue;
            auto [it, fresh] = f.terms.emplace(m, c);
            if (!fresh && (it->second += c) == 0) f.terms.erase(it);
        }
        return f;
    }

    // ----- series operations ----------------------------------------------

    std::optional<Rational> valuation(const Series& f) const {
        std::optional<Rational> v;  // absent = +infinity (zero series)
        for (const auto& [m, c] : f.terms) {
            (void)c;
            Rational vm = valuation(m);
            if (!v || vm < *v) v = vm;
        }
        return v;
    }
    // Membership in the augmentation ideal <s, t_j> + positive energy:
    // every stored monomial has strictly positive valuation.
    bool in_positive_ideal(const Series& f) const {
        for (const auto& [m, c] : f.terms) {
            (void)c;
            if (valuation(m) <= 0) return false;
        }
        return true;
    }

    Series add(const Series& a, const Series& b) const {
        Series r;
        r.cutoff = min_cutoff(a.cutoff, b.cutoff);
        r.terms = a.terms;
        for (const auto& [m, c] : b.terms) {
            auto [it, fresh] = r.terms.emplace(m, c);
            if (!fresh && (it->second += c) == 0) r.terms.erase(it);
        }
        enforce_cutoff(r);
        return r;
    }
    Series neg(Series a) const {
        for (auto& [m, c] : a.terms) {
            (void)m;
            c = -c;
        }
        return a;
    }
    Series sub(const Series& a, const Series& b) const { return add(a, neg(b)); }

    Series scalar_mul(const Rational& c, const Series& a) const {
        Series r;
        r.cutoff = a.cutoff;
        if (c == 0) return r;
        r.terms = a.terms;
        for (auto& [m, v] : r.terms) {
            (void)m;
            v *= c;
        }
        return r;
    }

    // Exact product truncated to the weaker of the two operand cutoffs.
    Series mul(const Series& a, const Series& b) const {
        Series r;
        r.cutoff = min_cutoff(a.cutoff, b.cutoff);
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                Monomial m = mul(ma, mb);
                if (r.cutoff && valuation(m) > *r.cutoff) continue;
                auto [it, fresh] = r.terms.emplace(m, ca * cb);
                if (!fresh && (it->second += ca * cb) == 0) r.terms.erase(it);
            }
        return r;
    }

    Series mul_monomial(const Monomial& m, const Rational& c, const Series& a) const {
        Series r;
        r.cutoff = a.cutoff;
        if (c == 0) return r;
        for (const auto& [ma, ca] : a.terms) {
            Monomial mm = mul(m, ma);
            if (r.cutoff && valuation(mm) > *r.cutoff) continue;
            r.terms[mm] = c * ca;
        }
        return r;
    }

    Series truncate(Series a, const Rational& cutoff) const {
        a.cutoff = a.cutoff ? std::min(*a.cutoff, cutoff) : cutoff;
        enforce_cutoff(a);
        return a;
    }

    // Exact coefficient of a monomial; asking beyond the trusted cutoff is a
    // truncation fault, never silently zero.
    Rational coefficient(const Series& f, const Monomial& m) const {
        if (f.cutoff && valuation(m) > *f.cutoff)
            throw TruncationError("coefficient of " + to_string(m) +
                                  " requested beyond series cutoff " +
                                  rational_to_string(*f.cutoff));
        auto it = f.terms.find(m);
        return it == f.terms.end() ? Rational(0) : it->second;
    }

    // Formal partial derivatives.  Differentiation divides the trusted
    // filtration level by exactly one step of valuation.
    Series derive_s(const Series& f) const {
        Series r;
        r.cutoff = lowered_cutoff(f.cutoff);
        for (const auto& [m, c] : f.terms) {
            if (m.s == 0) continue;
            Monomial d = m;
            d.s -= 1;
            r.terms[d] = c * m.s;
        }
        return r;
    }
    Series derive_t(const Series& f, int j) const {
        Series r;
        r.cutoff = lowered_cutoff(f.cutoff);
        for (const auto& [m, c] : f.terms) {
            if (m.t.at(j) == 0) continue;
            Monomial d = m;
            d.t[j] -= 1;
            r.terms[d] = c * m.t[j];
        }
        return r;
    }

    // Projection onto the monomials with no boundary-point variable and a
    // spherical class part; these are the closed-curve contributions
    // subtracted from the raw superpotential.
    Series type_d_projection(const Series& f) const {
        Series r;
        r.cutoff = f.cutoff;
        for (const auto& [m, c] : f.terms)
            if (m.s == 0 && spherical(m)) r.terms[m] = c;
        return r;
    }

    // Terms whose class part equals the given exponent vector (other factors
    // kept).  class_part(f, zero vector) isolates the energy-zero part.
    Series class_part(const Series& f, const std::vector<int>& beta) const {
        Series r;
        r.cutoff = f.cutoff;
        for (const auto& [m, c] : f.terms)
            if (m.beta == beta) r.terms[m] = c;
        return r;
    }

    bool is_homogeneous(const Series& f, long deg) const {
        for (const auto& [m, c] : f.terms) {
            (void)c;
            if (degree(m) != deg) return false;
        }
        return true;
    }

    // ----- filtered monoid enumeration --------------------------------------

    // Multiplicative closure of the monomials of the given generator series
    // together with every class symbol T^beta and every interior variable
    // t_j, listed with nondecreasing valuation up to the cutoff.  Generators
    // must lie in the augmentation ideal: a generator monomial of valuation
    // zero (the identity) makes every truncation infinite.
    FilteredMonoid generate_monoid(const std::vector<Series>& generators,
                                   const Rational& cutoff) const {
        if (cutoff < 0) throw ConfigError("monoid cutoff must be nonnegative");
        std::set<Monomial> gens;
        for (const auto& f : generators)
            for (const auto& [m, c] : f.terms) {
                (void)c;
                gens.insert(m);
            }
        for (std::size_t j = 0; j < interior_.size(); ++j)
            gens.insert(t_unit(static_cast<int>(j)));
        for (std::size_t i = 0; i < classes_.size(); ++i)
            gens.insert(class_unit(static_cast<int>(i)));
        for (const auto& g : gens)
            if (valuation(g) <= 0)
                throw ConfigError("non-sababa input: generator " + to_string(g) +
                                  " has valuation 0");

        std::set<Monomial> seen{one()};
        std::vector<Monomial> work{one()};
        while (!work.empty()) {
            Monomial m = work.back();
            work.pop_back();
            for (const auto& g : gens) {
                Monomial p = mul(m, g);
                if (valuation(p) > cutoff) continue;
                if (seen.insert(p).second) work.push_back(p);
            }
        }

        FilteredMonoid mon;
        mon.elements.assign(seen.begin(), seen.end());
        std::sort(mon.elements.begin(), mon.elements.end(),
                  [&](const Monomial& a, const Monomial& b) {
                      Rational va = valuation(a), vb = valuation(b);
                      if (va != vb) return va < vb;
                      Rational ea = energy(a), eb = energy(b);
                      if (ea != eb) return ea < eb;
                      long ma = maslov(a), mb = maslov(b);
                      if (ma != mb) return ma < mb;
                      return exponent_key(a) > exponent_key(b);
                  });
        for (std::size_t i = 0; i < mon.elements.size(); ++i) {
            Rational v = valuation(mon.elements[i]);
            if (mon.level_values.empty() || mon.level_values.back() != v) {
                mon.level_values.push_back(v);
                mon.level_ends.push_back(i);
            } else {
                mon.level_ends.back() = i;
            }
            mon.index[mon.elements[i]] = i;
        }
        return mon;
    }

    // ----- formatting -------------------------------------------------------

    std::string to_string(const Monomial& m) const {
        std::string out;
        auto factor = [&out](const std::string& sym, int e) {
            if (e == 0) return;
            if (!out.empty()) out += "*";
            out += sym;
            if (e != 1) out += "^" + std::to_string(e);
        };
        factor("s", m.s);
        for (std::size_t j = 0; j < interior_.size(); ++j)
            factor("t(" + interior_[j].id + ")", m.t[j]);
        for (std::size_t i = 0; i < classes_.size(); ++i)
            factor("T(" + classes_[i].id + ")", m.beta[i]);
        return out.empty() ? "1" : out;
    }

    std::string to_string(const Series& f) const {
        if (f.terms.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : f.terms) {
            if (!out.empty()) out += " + ";
            if (m.is_identity())
                out += rational_to_string(c);
            else
                out += rational_to_string(c) + "*" + to_string(m);
        }
        return out;
    }

  private:
    static std::optional<Rational> lowered_cutoff(const std::optional<Rational>& c) {
        if (!c) return std::nullopt;
        return *c - 1;
    }
    void enforce_cutoff(Series& f) const {
        if (!f.cutoff) return;
        for (auto it = f.terms.begin(); it != f.terms.end();)
            it = valuation(it->first) > *f.cutoff ? f.terms.erase(it) : std::next(it);
    }
    std::vector<long> exponent_key(const Monomial& m) const {
        std::vector<long> key;
        key.reserve(1 + m.t.size() + m.beta.size());
        key.push_back(m.s);
        for (int e : m.t) key.push_back(e);
        for (int e : m.beta) key.push_back(e);
        return key;
    }

    int n_;
    std::vector<InteriorClass> interior_;
    std::vector<ClassGenerator> classes_;
};

}  // namespace ogw
