#pragma once

// Finite graded-commutative differential algebra models standing in for the
// de Rham complex of the Lagrangian, with exact integration, the signed
// Poincare pairing <xi, eta> = (-1)^{|eta|} * integral(xi ^ eta), and a
// gauge-parameterized primitive solver (db = -o) used by the inductive
// bounding-chain construction.
//
// Two kinds of cochains appear: RealCochain (rational coefficients over the
// model basis — obstruction chains, tensor values, basis computations) and
// Cochain (coefficients in the graded coefficient ring — bounding chains and
// everything the A-infinity operations act on).  Ring generators all have
// even degree, so series coefficients commute past forms without signs.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ogw/errors.hpp"
#include "ogw/linalg.hpp"
#include "ogw/novikov.hpp"
#include "ogw/rational.hpp"

namespace ogw {

struct BasisElement {
    std::string label;
    int degree = 0;
};

// Cochain with exact rational coefficients over the model basis.
struct RealCochain {
    Vec coords;

    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
    friend bool operator==(const RealCochain&, const RealCochain&) = default;
};

// Cochain with coefficients in the graded coefficient ring.
struct Cochain {
    std::vector<Series> coords;

    bool is_zero() const {
        for (const auto& f : coords)
            if (!f.is_zero()) return false;
        return true;
    }
};

// Deterministic primitive-selection rule for solve_primitive.  "pivot" is
// the canonical linear section of d (free variables of the reduced system
// set to zero).  "shifted" adds, for each nonzero input, a fixed closed form
// in each solve degree — a second section used to probe gauge independence
// of downstream observables.
struct GaugeChoice {
    std::string name = "pivot";
};

inline GaugeChoice make_gauge(const std::string& name) {
    if (name != "pivot" && name != "shifted")
        throw ConfigError("unknown gauge '" + name + "' (expected pivot or shifted)");
    return GaugeChoice{name};
}

class CochainModel {
  public:
    explicit CochainModel(int n) : n_(n) {
        if (n_ < 1 || n_ % 2 == 0)
            throw ConfigError("model dimension must be odd and positive");
    }

    void add_basis(const std::string& label, int degree) {
        if (finalized_) throw ConfigError("model already finalized");
        if (label.empty() || index_.count(label))
            throw ConfigError("basis labels must be unique and nonempty");
        if (degree < 0 || degree > n_)
            throw ConfigError("basis element '" + label + "' has degree outside [0, " +
                              std::to_string(n_) + "]");
        index_[label] = basis_.size();
        basis_.push_back({label, degree});
    }

    void set_d(const std::string& from,
               const std::vector<std::pair<std::string, Rational>>& image) {
        if (finalized_) throw ConfigError("model already finalized");
        pending_d_.emplace_back(from, image);
    }

    // Records lhs ^ rhs; the graded-commutative mirror is filled automatically.
    void set_product(const std::string& lhs, const std::string& rhs,
                     const std::vector<std::pair<std::string, Rational>>& value) {
        if (finalized_) throw ConfigError("model already finalized");
        pending_products_.emplace_back(lhs, rhs, value);
    }

    void set_integral(const std::string& label, const Rational& value) {
        if (finalized_) throw ConfigError("model already finalized");
        pending_integrals_.emplace_back(label, value);
    }

    void finalize(const std::string& unit_label, const std::string& vol_label) {
        if (finalized_) throw ConfigError("model already finalized");
        unit_ = require(unit_label);
        vol_ = require(vol_label);
        std::size_t dim = basis_.size();
        d_cols_.assign(dim, Vec(dim, Rational(0)));
        for (const auto& [from, image] : pending_d_) d_cols_[require(from)] = to_coords(image);
        integral_.assign(dim, Rational(0));
        for (const auto& [label, value] : pending_integrals_)
            integral_[require(label)] = value;
        for (const auto& [lhs, rhs, value] : pending_products_) {
            std::size_t i = require(lhs), j = require(rhs);
            Vec v = to_coords(value);
            int sign = (basis_[i].degree * basis_[j].degree) % 2 == 0 ? 1 : -1;
            Vec mirrored = v;
            for (auto& c : mirrored) c *= sign;
            prod_[{i, j}] = std::move(v);
            if (j != i) prod_[{j, i}] = std::move(mirrored);
        }
        for (std::size_t j = 0; j < dim; ++j) {
            Vec e(dim, Rational(0));
            e[j] = 1;
            prod_[{unit_, j}] = e;
            prod_[{j, unit_}] = e;
        }
        pending_d_.clear();
        pending_products_.clear();
        pending_integrals_.clear();
        finalized_ = true;
        validate();
        pairing_.assign(dim, Vec(dim, Rational(0)));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                int sign = basis_[j].degree % 2 == 0 ? 1 : -1;
                pairing_[i][j] =
                    Rational(sign) * integral(wedge(basis_vector(i), basis_vector(j)));
            }
    }

    int n() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    std::size_t unit_index() const { return unit_; }
    std::size_t vol_index() const { return vol_; }
    std::size_t index_of(const std::string& label) const { return require(label); }

    // ----- rational-coefficient cochains ------------------------------------

    RealCochain zero_real() const { return RealCochain{Vec(dim(), Rational(0))}; }
    RealCochain basis_vector(std::size_t i) const {
        RealCochain r = zero_real();
        r.coords.at(i) = 1;
        return r;
    }
    RealCochain unit_real() const { return basis_vector(unit_); }
    RealCochain vol_real() const { return basis_vector(vol_); }

    RealCochain add(const RealCochain& a, const RealCochain& b) const {
        RealCochain r = a;
        for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
        return r;
    }
    RealCochain sub(const RealCochain& a, const RealCochain& b) const {
        RealCochain r = a;
        for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
        return r;
    }
    RealCochain scale(const Rational& c, const RealCochain& a) const {
        RealCochain r = a;
        for (auto& x : r.coords) x *= c;
        return r;
    }
    RealCochain neg(const RealCochain& a) const { return scale(-1, a); }

    RealCochain wedge(const RealCochain& a, const RealCochain& b) const {
        RealCochain r = zero_real();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a.coords[i] == 0) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (b.coords[j] == 0) continue;
                const Vec& p = product(i, j);
                Rational c = a.coords[i] * b.coords[j];
                for (std::size_t k = 0; k < dim(); ++k)
                    if (p[k] != 0) r.coords[k] += c * p[k];
            }
        }
        return r;
    }

    RealCochain d(const RealCochain& a) const {
        RealCochain r = zero_real();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a.coords[i] == 0) continue;
            for (std::size_t k = 0; k < dim(); ++k)
                if (d_cols_[i][k] != 0) r.coords[k] += a.coords[i] * d_cols_[i][k];
        }
        return r;
    }

    Rational integral(const RealCochain& a) const {
        Rational s = 0;
        for (std::size_t i = 0; i < dim(); ++i)
            if (a.coords[i] != 0) s += a.coords[i] * integral_[i];
        return s;
    }

    Rational pairing(const RealCochain& a, const RealCochain& b) const {
        Rational s = 0;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a.coords[i] == 0) continue;
            for (std::size_t j = 0; j < dim(); ++j)
                if (b.coords[j] != 0) s += a.coords[i] * b.coords[j] * pairing_[i][j];
        }
        return s;
    }

    RealCochain degree_part(const RealCochain& a, int p) const {
        RealCochain r = a;
        for (std::size_t i = 0; i < dim(); ++i)
            if (basis_[i].degree != p) r.coords[i] = 0;
        return r;
    }

    std::string to_string(const RealCochain& a) const {
        std::string out;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a.coords[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += rational_to_string(a.coords[i]) + "*" + basis_[i].label;
        }
        return out.empty() ? "0" : out;
    }

    // ----- cohomology and primitives -----------------------------------------

    // Dimensions of ker d / im d per degree, 0..n.
    std::vector<std::pair<int, int>> cohomology() const {
        std::vector<std::pair<int, int>> out;
        for (int p = 0; p <= n_; ++p) {
            std::size_t dim_p = 0;
            for (const auto& e : basis_)
                if (e.degree == p) ++dim_p;
            std::size_t r_p = degree_rank(p);        // rank of d on degree p
            std::size_t r_prev = degree_rank(p - 1); // image landing in degree p
            out.emplace_back(p, static_cast<int>(dim_p - r_p - r_prev));
        }
        return out;
    }

    // Solve db = -o deterministically.  Throws "not closed" when d(o) != 0
    // and "obstructed" (with the witness) when o has a nonzero cohomology
    // class, mirroring the solvability hypotheses of the construction.
    RealCochain solve_primitive(const RealCochain& o, const GaugeChoice& gauge) const {
        if (!d(o).is_zero())
            throw VerificationError("not closed: d(" + to_string(o) + ") = " +
                                    to_string(d(o)));
        Mat rows(dim(), Vec(dim(), Rational(0)));
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t k = 0; k < dim(); ++k) rows[k][i] = d_cols_[i][k];
        Vec rhs = neg(o).coords;
        std::optional<Vec> sol = solve_linear(rows, rhs);
        if (!sol)
            throw VerificationError("obstructed: nonzero cohomology class of " +
                                    to_string(o));
        RealCochain b{*sol};
        if (gauge.name == "shifted" && !o.is_zero()) {
            for (int p = 0; p + 1 <= n_; ++p) {
                if (degree_part(o, p + 1).is_zero()) continue;
                RealCochain z = canonical_closed_form(p);
                if (p == n_) z = sub(z, scale(integral(z), vol_real()));
                b = add(b, z);
            }
        }
        internal_check(d(b) == neg(o), "primitive postcondition db = -o failed");
        return b;
    }

    const Mat& pairing_matrix() const { return pairing_; }

    // ----- ring-coefficient cochains ------------------------------------------

    Cochain zero_cochain(const NovikovRing& ring,
                         std::optional<Rational> cutoff = std::nullopt) const {
        Cochain x;
        x.coords.assign(dim(), ring.zero(cutoff));
        return x;
    }
    // real cochain times a scalar series
    Cochain tensor(const NovikovRing& ring, const RealCochain& a, const Series& f) const {
        Cochain x = zero_cochain(ring, f.cutoff);
        for (std::size_t i = 0; i < dim(); ++i)
            if (a.coords[i] != 0) x.coords[i] = ring.scalar_mul(a.coords[i], f);
        return x;
    }

    Cochain add(const NovikovRing& ring, const Cochain& a, const Cochain& b) const {
        Cochain r;
        r.coords.reserve(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            r.coords.push_back(ring.add(a.coords[i], b.coords[i]));
        return r;
    }
    Cochain sub(const NovikovRing& ring, const Cochain& a, const Cochain& b) const {
        Cochain r;
        r.coords.reserve(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            r.coords.push_back(ring.sub(a.coords[i], b.coords[i]));
        return r;
    }
    Cochain smul(const NovikovRing& ring, const Series& f, const Cochain& a) const {
        Cochain r;
        r.coords.reserve(dim());
        for (std::size_t i = 0; i < dim(); ++i) r.coords.push_back(ring.mul(f, a.coords[i]));
        return r;
    }

    Cochain wedge(const NovikovRing& ring, const Cochain& a, const Cochain& b) const {
        Cochain r = zero_cochain(ring);
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a.coords[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (b.coords[j].is_zero()) continue;
                const Vec& p = product(i, j);
                Series c = ring.mul(a.coords[i], b.coords[j]);
                for (std::size_t k = 0; k < dim(); ++k)
                    if (p[k] != 0)
                        r.coords[k] = ring.add(r.coords[k], ring.scalar_mul(p[k], c));
            }
        }
        return r;
    }

    Cochain d(const NovikovRing& ring, const Cochain& a) const {
        Cochain r = zero_cochain(ring);
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a.coords[i].is_zero()) continue;
            for (std::size_t k = 0; k < dim(); ++k)
                if (d_cols_[i][k] != 0)
                    r.coords[k] = ring.add(
                        r.coords[k], ring.scalar_mul(d_cols_[i][k], a.coords[i]));
        }
        return r;
    }

    Series integral(const NovikovRing& ring, const Cochain& a) const {
        Series s = ring.zero();
        for (std::size_t i = 0; i < dim(); ++i)
            if (integral_[i] != 0)
                s = ring.add(s, ring.scalar_mul(integral_[i], a.coords[i]));
        return s;
    }

    Series pairing(const NovikovRing& ring, const Cochain& a, const Cochain& b) const {
        Series s = ring.zero();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a.coords[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (b.coords[j].is_zero() || pairing_[i][j] == 0) continue;
                s = ring.add(s, ring.scalar_mul(pairing_[i][j],
                                                ring.mul(a.coords[i], b.coords[j])));
            }
        }
        return s;
    }

    RealCochain coefficient(const NovikovRing& ring, const Cochain& a,
                            const Monomial& lambda) const {
        RealCochain r = zero_real();
        for (std::size_t i = 0; i < dim(); ++i)
            r.coords[i] = ring.coefficient(a.coords[i], lambda);
        return r;
    }

    Cochain truncate(const NovikovRing& ring, const Cochain& a, const Rational& e) const {
        Cochain r;
        r.coords.reserve(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            r.coords.push_back(ring.truncate(a.coords[i], e));
        return r;
    }

    Cochain degree_part(const Cochain& a, int p) const {
        Cochain r = a;
        for (std::size_t i = 0; i < dim(); ++i)
            if (basis_[i].degree != p) r.coords[i].terms.clear();
        return r;
    }

    // Total grading: form degree plus coefficient degree equals deg on every
    // stored term.
    bool is_homogeneous(const NovikovRing& ring, const Cochain& a, long deg) const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (const auto& [m, c] : a.coords[i].terms) {
                (void)c;
                if (basis_[i].degree + ring.degree(m) != deg) return false;
            }
        return true;
    }

    std::string to_string(const NovikovRing& ring, const Cochain& a) const {
        std::string out;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (a.coords[i].is_zero()) continue;
            if (!out.empty()) out += "; ";
            out += basis_[i].label + ": " + ring.to_string(a.coords[i]);
        }
        return out.empty() ? "0" : out;
    }

  private:
    std::size_t require(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw ConfigError("unknown basis label '" + label + "'");
        return it->second;
    }
    Vec to_coords(const std::vector<std::pair<std::string, Rational>>& entries) const {
        Vec v(basis_.size(), Rational(0));
        for (const auto& [label, value] : entries) v[require(label)] += value;
        return v;
    }
    const Vec& product(std::size_t i, std::size_t j) const {
        auto it = prod_.find({i, j});
        return it == prod_.end() ? zero_vec() : it->second;
    }
    const Vec& zero_vec() const {
        static thread_local std::map<std::size_t, Vec> cache;
        auto [it, fresh] = cache.emplace(basis_.size(), Vec());
        if (fresh) it->second.assign(basis_.size(), Rational(0));
        return it->second;
    }

    std::size_t degree_rank(int p) const {
        if (p < 0) return 0;
        Mat cols;
        for (std::size_t i = 0; i < dim(); ++i)
            if (basis_[i].degree == p) cols.push_back(d_cols_[i]);
        return cols.empty() ? 0 : rank(cols);  // row/column rank agree
    }

    RealCochain canonical_closed_form(int p) const {
        Mat rows;  // d restricted to degree-p columns
        std::vector<std::size_t> col_of;
        for (std::size_t i = 0; i < dim(); ++i)
            if (basis_[i].degree == p) col_of.push_back(i);
        if (col_of.empty()) return zero_real();
        rows.assign(dim(), Vec(col_of.size(), Rational(0)));
        for (std::size_t c = 0; c < col_of.size(); ++c)
            for (std::size_t k = 0; k < dim(); ++k) rows[k][c] = d_cols_[col_of[c]][k];
        Mat kernel = kernel_basis(rows);
        RealCochain z = zero_real();
        if (kernel.empty()) return z;
        for (std::size_t c = 0; c < col_of.size(); ++c) z.coords[col_of[c]] = kernel[0][c];
        return z;
    }

    void validate() const {
        std::size_t dim = basis_.size();
        if (basis_[unit_].degree != 0)
            throw ConfigError("unit element must have degree 0");
        if (basis_[vol_].degree != n_)
            throw ConfigError("volume element must have top degree");
        for (std::size_t i = 0; i < dim; ++i) {
            // d raises form degree by exactly one
            for (std::size_t k = 0; k < dim; ++k)
                if (d_cols_[i][k] != 0 && basis_[k].degree != basis_[i].degree + 1)
                    throw ConfigError("differential of '" + basis_[i].label +
                                      "' is not homogeneous of degree +1");
            // d squared
            if (!d(d(basis_vector(i))).is_zero())
                throw ConfigError("d^2 != 0 on '" + basis_[i].label + "'");
            if (integral_[i] != 0 && basis_[i].degree != n_)
                throw ConfigError("integral supported below top degree on '" +
                                  basis_[i].label + "'");
            // Stokes
            if (integral(d(basis_vector(i))) != 0)
                throw ConfigError("Stokes fails on '" + basis_[i].label + "'");
        }
        if (integral_[vol_] != 1)
            throw ConfigError("volume element must integrate to 1");
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                const Vec& p = product(i, j);
                int deg = basis_[i].degree + basis_[j].degree;
                for (std::size_t k = 0; k < dim; ++k)
                    if (p[k] != 0 && basis_[k].degree != deg)
                        throw ConfigError("product " + basis_[i].label + "^" +
                                          basis_[j].label + " is not degree-additive");
                // graded commutativity
                const Vec& q = product(j, i);
                int sign = (basis_[i].degree * basis_[j].degree) % 2 == 0 ? 1 : -1;
                for (std::size_t k = 0; k < dim; ++k)
                    if (p[k] != sign * q[k])
                        throw ConfigError("graded commutativity fails on " +
                                          basis_[i].label + ", " + basis_[j].label);
                // Leibniz
                RealCochain lhs = d(wedge(basis_vector(i), basis_vector(j)));
                RealCochain rhs = wedge(d(basis_vector(i)), basis_vector(j));
                RealCochain second = wedge(basis_vector(i), d(basis_vector(j)));
                rhs = basis_[i].degree % 2 == 0 ? add(rhs, second) : sub(rhs, second);
                if (!(lhs == rhs))
                    throw ConfigError("Leibniz fails on " + basis_[i].label + ", " +
                                      basis_[j].label);
                // associativity
                for (std::size_t k = 0; k < dim; ++k) {
                    RealCochain l =
                        wedge(wedge(basis_vector(i), basis_vector(j)), basis_vector(k));
                    RealCochain r =
                        wedge(basis_vector(i), wedge(basis_vector(j), basis_vector(k)));
                    if (!(l == r))
                        throw ConfigError("associativity fails on " + basis_[i].label +
                                          ", " + basis_[j].label + ", " + basis_[k].label);
                }
            }
        // unit acts trivially
        for (std::size_t j = 0; j < dim; ++j)
            if (!(wedge(basis_vector(unit_), basis_vector(j)) == basis_vector(j)))
                throw ConfigError("unit does not act as identity on '" +
                                  basis_[j].label + "'");
        // one-dimensional degree-zero cohomology, spanned by the unit
        for (const auto& [p, h] : cohomology()) {
            if (p == 0 && h != 1)
                throw ConfigError("degree-zero cohomology must be one-dimensional");
        }
        if (!d(basis_vector(unit_)).is_zero())
            throw ConfigError("unit element must be closed");
    }

    int n_;
    bool finalized_ = false;
    std::vector<BasisElement> basis_;
    std::map<std::string, std::size_t> index_;
    std::vector<Vec> d_cols_;  // column i: coordinates of d(e_i)
    std::map<std::pair<std::size_t, std::size_t>, Vec> prod_;
    Vec integral_;
    Mat pairing_;
    std::size_t unit_ = 0, vol_ = 0;
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, Rational>>>>
        pending_d_;
    std::vector<std::tuple<std::string, std::string,
                           std::vector<std::pair<std::string, Rational>>>>
        pending_products_;
    std::vector<std::pair<std::string, Rational>> pending_integrals_;
};

// Interior-class side of the geometry: degrees come from the ring's interior
// classes; the unit restricts to the model unit and every positive-degree
// relative class vanishes on the boundary; involution eigenvalues follow the
// real-structure rule phi* gamma_j = (-1)^{deg/2} gamma_j.
class RelativeModel {
  public:
    RelativeModel(const NovikovRing& ring, const CochainModel& target)
        : ring_(&ring), target_(&target) {}

    int degree(int j) const { return ring_->interior().at(j).degree; }
    RealCochain restriction(int j) const {
        return ring_->interior().at(j).unit ? target_->unit_real()
                                            : target_->zero_real();
    }
    int involution_sign(int j) const { return degree(j) / 2 % 2 == 0 ? 1 : -1; }

  private:
    const NovikovRing* ring_;
    const CochainModel* target_;
};

// ----- built-in models --------------------------------------------------------

// Minimal model of the sphere cohomology: the unit and a top generator,
// trivial differential.
inline CochainModel minimal_sphere_model(int n) {
    CochainModel m(n);
    m.add_basis("one", 0);
    m.add_basis("vol", n);
    m.set_integral("vol", 1);
    m.finalize("one", "vol");
    return m;
}

// A 3-sphere model with three exact pairs on top of the sphere cohomology:
// du = z, dx = y, dw = v2, products u^v2 = v, z^w = -v, x^y = v.  The extra
// pairs give the primitive solver genuine work and a one-dimensional space
// of closed 1-forms for gauge experiments, while H* stays that of the
// 3-sphere and the degree-complementary pairing stays nonsingular.
inline CochainModel extended_s3_model() {
    CochainModel m(3);
    m.add_basis("one", 0);
    m.add_basis("u", 0);
    m.add_basis("z", 1);
    m.add_basis("x", 1);
    m.add_basis("y", 2);
    m.add_basis("w", 2);
    m.add_basis("v", 3);
    m.add_basis("v2", 3);
    m.set_d("u", {{"z", 1}});
    m.set_d("x", {{"y", 1}});
    m.set_d("w", {{"v2", 1}});
    m.set_product("u", "v2", {{"v", 1}});
    m.set_product("z", "w", {{"v", -1}});
    m.set_product("x", "y", {{"v", 1}});
    m.set_integral("v", 1);
    m.finalize("one", "v");
    return m;
}

}  // namespace ogw
