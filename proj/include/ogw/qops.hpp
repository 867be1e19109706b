#pragma once

// Sparse store of open structure constants and the deformed operations built
// from them.
//
// A store holds, per curve class beta of positive energy, the values of the
// operations q^beta_{k,l} on tuples of boundary basis elements and multisets
// of interior classes (DiskKey -> cochain), together with the closed-string
// scalars q^beta_{-1,l} (PointKey -> rational).  The energy-zero operations
// are never stored: they are structural and hard-coded in eval_disk
//   q^0_{1,0}(x)      = dx,
//   q^0_{2,0}(x, y)   = (-1)^{|x|} x ^ y,
//   q^0_{0,1}(gamma)  = (-1)^{|gamma|+1} gamma|_L,
// and vanish for every other signature.
//
// From the store the module assembles the deformed operations
//   m_k(args)  = sum over stored keys of arity k, weighted by
//                T^beta prod_j t_j^{r_j} / r_j!,
//   m_exp(b)   = sum_k m_k(b^{tensor k}),
//   m_minus_one = the scalar series of point values,
// all truncated to a requested filtration cutoff.  Interior deformations are
// described by an InteriorForm, the set of interior classes participating in
// gamma = sum_j t_j gamma_j.
//
// Stores serialize to a line-based text format that round-trips exactly; the
// loader cross-checks the header against the ring and cochain model it is
// asked to attach to.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ogw/cochain.hpp"
#include "ogw/errors.hpp"
#include "ogw/novikov.hpp"
#include "ogw/rational.hpp"

namespace ogw {

struct DiskKey {
    std::vector<int> beta;      // class exponents, not all zero
    std::vector<int> inputs;    // ordered boundary basis indices
    std::vector<int> interior;  // weakly increasing interior class indices

    auto operator<=>(const DiskKey&) const = default;
    bool operator==(const DiskKey&) const = default;
};

struct PointKey {
    std::vector<int> beta;
    std::vector<int> interior;

    auto operator<=>(const PointKey&) const = default;
    bool operator==(const PointKey&) const = default;
};

// The interior deformation gamma = sum_{j in support} t_j gamma_j.  Indices
// are strictly increasing positions into ring.interior().
struct InteriorForm {
    std::vector<int> support;
};

inline std::vector<int> sorted_multiset(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// True when every element of the weakly increasing multiset lies in the
// strictly increasing support set.
inline bool multiset_in_support(const std::vector<int>& multiset,
                                const std::vector<int>& support) {
    return std::all_of(multiset.begin(), multiset.end(), [&](int j) {
        return std::binary_search(support.begin(), support.end(), j);
    });
}

class QOperators {
public:
    QOperators(const NovikovRing& ring, const CochainModel& model,
               Rational cutoff)
        : ring_(&ring),
          model_(&model),
          relative_(ring, model),
          cutoff_(std::move(cutoff)) {
        if (cutoff_ < 0) throw ConfigError("store cutoff must be nonnegative");
    }

    const NovikovRing& ring() const { return *ring_; }
    const CochainModel& model() const { return *model_; }
    const RelativeModel& relative() const { return relative_; }
    const Rational& cutoff() const { return cutoff_; }

    const std::map<DiskKey, RealCochain>& disk_entries() const {
        return disk_;
    }
    const std::map<PointKey, Rational>& point_entries() const {
        return point_;
    }

    InteriorForm full_interior() const {
        InteriorForm gamma;
        for (int j = 0; j < static_cast<int>(ring_->interior().size()); ++j)
            gamma.support.push_back(j);
        return gamma;
    }

    void check_interior_form(const InteriorForm& gamma) const {
        for (std::size_t i = 0; i < gamma.support.size(); ++i) {
            int j = gamma.support[i];
            if (j < 0 || j >= static_cast<int>(ring_->interior().size()))
                throw ConfigError("interior form references unknown class");
            if (i > 0 && gamma.support[i - 1] >= j)
                throw ConfigError(
                    "interior form support must be strictly increasing");
        }
    }

    // ---- store mutation ------------------------------------------------

    // Structural validity only (index ranges, positive class, cutoff bound).
    // Semantic properties of the values are the verifiers' business, so that
    // deliberately corrupted entries can be stored and then caught.
    void set_disk(DiskKey key, const RealCochain& value) {
        key.interior = sorted_multiset(std::move(key.interior));
        validate_beta(key.beta, key.interior.size());
        for (int i : key.inputs)
            if (i < 0 || i >= static_cast<int>(model_->dim()))
                throw ConfigError("disk entry references unknown basis index");
        validate_interior(key.interior);
        if (value.coords.size() != model_->dim())
            throw ConfigError("disk entry value has wrong dimension");
        if (value.is_zero())
            disk_.erase(key);
        else
            disk_[key] = value;
    }

    void set_point(PointKey key, const Rational& value) {
        key.interior = sorted_multiset(std::move(key.interior));
        validate_beta(key.beta, key.interior.size());
        validate_interior(key.interior);
        if (value == 0)
            point_.erase(key);
        else
            point_[key] = value;
    }

    // ---- evaluation ----------------------------------------------------

    // q^beta_{k,l} on a tuple of basis elements and a multiset of interior
    // classes.  Includes the structural energy-zero operations.
    RealCochain eval_disk(const std::vector<int>& beta,
                          const std::vector<int>& inputs,
                          std::vector<int> interior) const {
        interior = sorted_multiset(std::move(interior));
        if (is_zero_class(beta)) {
            if (inputs.size() == 1 && interior.empty())
                return model_->d(model_->basis_vector(inputs[0]));
            if (inputs.size() == 2 && interior.empty()) {
                int sign = model_->basis()[inputs[0]].degree % 2 != 0 ? -1 : 1;
                return model_->scale(
                    sign, model_->wedge(model_->basis_vector(inputs[0]),
                                        model_->basis_vector(inputs[1])));
            }
            if (inputs.empty() && interior.size() == 1) {
                int j = interior[0];
                int sign = relative_.degree(j) % 2 != 0 ? 1 : -1;
                return model_->scale(sign, relative_.restriction(j));
            }
            return model_->zero_real();
        }
        DiskKey key{beta, inputs, std::move(interior)};
        auto it = disk_.find(key);
        return it == disk_.end() ? model_->zero_real() : it->second;
    }

    // q^beta_{-1,l} on a multiset of interior classes; zero at energy zero.
    Rational eval_point(const std::vector<int>& beta,
                        std::vector<int> interior) const {
        if (is_zero_class(beta)) return 0;
        PointKey key{beta, sorted_multiset(std::move(interior))};
        auto it = point_.find(key);
        return it == point_.end() ? Rational(0) : it->second;
    }

    // The series T^beta prod_j t_j^{r_j} / prod_j r_j! attached to a key.
    Series key_weight(const std::vector<int>& beta,
                      const std::vector<int>& interior,
                      const std::optional<Rational>& cutoff) const {
        std::vector<int> t(ring_->interior().size(), 0);
        Rational factorial = 1;
        for (int j : interior) {
            ++t[j];
            factorial *= t[j];
        }
        return ring_->monomial_series(ring_->make(0, t, beta),
                                      Rational(1) / factorial, cutoff);
    }

    // ---- deformed operations --------------------------------------------

    // q^0_{2,0} extended bilinearly: sum_i (-1)^{|e_i|} a_i e_i ^ b.
    Cochain signed_wedge(const Cochain& a, const Cochain& b) const {
        Cochain signed_a = a;
        for (std::size_t i = 0; i < model_->dim(); ++i)
            if (model_->basis()[i].degree % 2 != 0)
                signed_a.coords[i] = ring_->neg(signed_a.coords[i]);
        return model_->wedge(*ring_, signed_a, b);
    }

    Cochain m_k(const InteriorForm& gamma, const std::vector<Cochain>& args,
                const Rational& cutoff) const {
        check_interior_form(gamma);
        Cochain out = model_->zero_cochain(*ring_, cutoff);
        if (args.size() == 1)
            out = model_->add(*ring_, out, model_->d(*ring_, args[0]));
        if (args.size() == 2)
            out = model_->add(
                *ring_, out,
                model_->truncate(*ring_, signed_wedge(args[0], args[1]),
                                 cutoff));
        if (args.empty())
            out = model_->add(*ring_, out, interior_term(gamma, cutoff));
        for (const auto& [key, value] : disk_) {
            if (key.inputs.size() != args.size()) continue;
            if (!multiset_in_support(key.interior, gamma.support)) continue;
            Series w = key_weight(key.beta, key.interior, cutoff);
            for (std::size_t i = 0; i < key.inputs.size() && !w.is_zero(); ++i)
                w = ring_->mul(w, args[i].coords[key.inputs[i]]);
            if (!w.is_zero())
                out = model_->add(*ring_, out, model_->tensor(*ring_, value, w));
        }
        return model_->truncate(*ring_, out, cutoff);
    }

    // sum_{k >= 0} m_k(b, ..., b); each stored key contributes once with the
    // product of the b-coordinates at its input positions.
    Cochain m_exp(const InteriorForm& gamma, const Cochain& b,
                  const Rational& cutoff) const {
        check_interior_form(gamma);
        Cochain out = interior_term(gamma, cutoff);
        out = model_->add(*ring_, out, model_->d(*ring_, b));
        out = model_->add(
            *ring_, out, model_->truncate(*ring_, signed_wedge(b, b), cutoff));
        for (const auto& [key, value] : disk_) {
            if (!multiset_in_support(key.interior, gamma.support)) continue;
            Series w = key_weight(key.beta, key.interior, cutoff);
            for (std::size_t i = 0; i < key.inputs.size() && !w.is_zero(); ++i)
                w = ring_->mul(w, b.coords[key.inputs[i]]);
            if (!w.is_zero())
                out = model_->add(*ring_, out, model_->tensor(*ring_, value, w));
        }
        return model_->truncate(*ring_, out, cutoff);
    }

    Series m_minus_one(const InteriorForm& gamma, const Rational& cutoff) const {
        check_interior_form(gamma);
        Series out = ring_->zero(cutoff);
        for (const auto& [key, value] : point_) {
            if (!multiset_in_support(key.interior, gamma.support)) continue;
            out = ring_->add(
                out, ring_->scalar_mul(value,
                                       key_weight(key.beta, key.interior,
                                                  cutoff)));
        }
        return out;
    }

private:
    bool is_zero_class(const std::vector<int>& beta) const {
        if (beta.size() != ring_->classes().size())
            throw ConfigError("class exponent vector has wrong length");
        return std::all_of(beta.begin(), beta.end(),
                           [](int e) { return e == 0; });
    }

    void validate_beta(const std::vector<int>& beta,
                       std::size_t interior_count) const {
        for (int e : beta)
            if (e < 0) throw ConfigError("class exponents must be nonnegative");
        if (is_zero_class(beta))
            throw ConfigError(
                "energy-zero operations are structural and cannot be stored");
        Monomial m = ring_->make(0, std::vector<int>(ring_->interior().size(), 0),
                                 beta);
        if (ring_->energy(m) + Rational(interior_count) > cutoff_)
            throw ConfigError("stored entry lies beyond the store cutoff");
    }

    void validate_interior(const std::vector<int>& interior) const {
        for (int j : interior)
            if (j < 0 || j >= static_cast<int>(ring_->interior().size()))
                throw ConfigError("entry references unknown interior class");
    }

    // m_0 at energy zero: sum_{j in support} t_j (-1)^{|gamma_j|+1} gamma_j|_L.
    Cochain interior_term(const InteriorForm& gamma,
                          const Rational& cutoff) const {
        Cochain out = model_->zero_cochain(*ring_, cutoff);
        for (int j : gamma.support) {
            RealCochain r = relative_.restriction(j);
            if (r.is_zero()) continue;
            int sign = relative_.degree(j) % 2 != 0 ? 1 : -1;
            Series tj = ring_->monomial_series(ring_->t_unit(j), sign, cutoff);
            out = model_->add(*ring_, out, model_->tensor(*ring_, r, tj));
        }
        return out;
    }

    const NovikovRing* ring_;
    const CochainModel* model_;
    RelativeModel relative_;
    Rational cutoff_;
    std::map<DiskKey, RealCochain> disk_;
    std::map<PointKey, Rational> point_;
};

// ---- serialization -------------------------------------------------------

namespace detail {

inline std::string join_ints(const std::vector<int>& v) {
    if (v.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

inline std::vector<int> split_ints(const std::string& text) {
    std::vector<int> out;
    if (text == "-") return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string piece = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (piece.empty()) throw ConfigError("malformed integer list: " + text);
        try {
            std::size_t used = 0;
            int value = std::stoi(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
            out.push_back(value);
        } catch (const std::exception&) {
            throw ConfigError("malformed integer list: " + text);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace detail

// Canonical text form of a store.  Entries are emitted in key order, so the
// output is a deterministic function of the store contents.
inline std::string save_store_text(const QOperators& q) {
    const NovikovRing& ring = q.ring();
    const CochainModel& model = q.model();
    std::ostringstream out;
    out << "qstore 1\n";
    out << "n " << model.n() << "\n";
    out << "cutoff " << rational_to_string(q.cutoff()) << "\n";
    for (const auto& b : model.basis())
        out << "basis " << b.label << " " << b.degree << "\n";
    for (const auto& g : ring.interior()) {
        out << "interior " << g.id << " " << g.degree;
        if (g.unit) out << " unit";
        if (g.divisor) out << " divisor";
        out << "\n";
    }
    for (const auto& c : ring.classes()) {
        out << "class " << c.id << " " << rational_to_string(c.energy) << " "
            << c.maslov << (c.spherical ? " spherical" : "");
        out << " pair=";
        for (std::size_t j = 0; j < c.pairings.size(); ++j) {
            if (j) out << ",";
            out << rational_to_string(c.pairings[j]);
        }
        out << "\n";
    }
    for (const auto& [key, value] : q.disk_entries()) {
        for (std::size_t c = 0; c < value.coords.size(); ++c) {
            if (value.coords[c] == 0) continue;
            out << "disk " << detail::join_ints(key.beta) << " "
                << detail::join_ints(key.inputs) << " "
                << detail::join_ints(key.interior) << " " << c << " "
                << rational_to_string(value.coords[c]) << "\n";
        }
    }
    for (const auto& [key, value] : q.point_entries())
        out << "point " << detail::join_ints(key.beta) << " "
            << detail::join_ints(key.interior) << " "
            << rational_to_string(value) << "\n";
    return out.str();
}

inline QOperators load_store_text(const NovikovRing& ring,
                                  const CochainModel& model,
                                  const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool saw_magic = false;
    std::optional<Rational> cutoff;
    std::size_t basis_seen = 0, interior_seen = 0, classes_seen = 0;
    std::map<DiskKey, RealCochain> disk_acc;
    std::vector<std::pair<PointKey, Rational>> points;

    auto fail = [](const std::string& why, const std::string& where) {
        throw ConfigError("store file: " + why + ": " + where);
    };

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string tag;
        fields >> tag;
        if (!saw_magic) {
            int version = 0;
            if (tag != "qstore" || !(fields >> version) || version != 1)
                fail("expected header 'qstore 1'", line);
            saw_magic = true;
            continue;
        }
        if (tag == "n") {
            int n = -1;
            if (!(fields >> n) || n != model.n())
                fail("dimension does not match the cochain model", line);
        } else if (tag == "cutoff") {
            std::string value;
            if (!(fields >> value)) fail("missing cutoff", line);
            cutoff = rational_from_string(value);
        } else if (tag == "basis") {
            std::string label;
            int degree = -1;
            if (!(fields >> label >> degree)) fail("malformed basis line", line);
            if (basis_seen >= model.dim() ||
                model.basis()[basis_seen].label != label ||
                model.basis()[basis_seen].degree != degree)
                fail("basis does not match the cochain model", line);
            ++basis_seen;
        } else if (tag == "interior") {
            std::string id, flag;
            int degree = -1;
            if (!(fields >> id >> degree)) fail("malformed interior line", line);
            bool unit = false, divisor = false;
            while (fields >> flag) {
                if (flag == "unit")
                    unit = true;
                else if (flag == "divisor")
                    divisor = true;
                else
                    fail("unknown interior flag", line);
            }
            if (interior_seen >= ring.interior().size()) fail("extra interior class", line);
            const InteriorClass& g = ring.interior()[interior_seen];
            if (g.id != id || g.degree != degree || g.unit != unit ||
                g.divisor != divisor)
                fail("interior class does not match the ring", line);
            ++interior_seen;
        } else if (tag == "class") {
            std::string id, energy, extra;
            long maslov = 0;
            if (!(fields >> id >> energy >> maslov))
                fail("malformed class line", line);
            bool spherical = false;
            std::string pairings;
            while (fields >> extra) {
                if (extra == "spherical")
                    spherical = true;
                else if (extra.rfind("pair=", 0) == 0)
                    pairings = extra.substr(5);
                else
                    fail("unknown class flag", line);
            }
            if (classes_seen >= ring.classes().size()) fail("extra class", line);
            const ClassGenerator& c = ring.classes()[classes_seen];
            bool pair_ok = true;
            {
                std::vector<std::string> parts;
                std::size_t pos = 0;
                while (pos <= pairings.size() && !pairings.empty()) {
                    std::size_t comma = pairings.find(',', pos);
                    parts.push_back(pairings.substr(
                        pos, comma == std::string::npos ? std::string::npos
                                                        : comma - pos));
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
                if (parts.size() != c.pairings.size())
                    pair_ok = false;
                else
                    for (std::size_t j = 0; j < parts.size(); ++j)
                        if (rational_from_string(parts[j]) != c.pairings[j])
                            pair_ok = false;
            }
            if (c.id != id || rational_from_string(energy) != c.energy ||
                c.maslov != maslov || c.spherical != spherical || !pair_ok)
                fail("class does not match the ring", line);
            ++classes_seen;
        } else if (tag == "disk") {
            std::string beta, inputs, interior, value;
            std::size_t coord = 0;
            if (!(fields >> beta >> inputs >> interior >> coord >> value))
                fail("malformed disk line", line);
            if (coord >= model.dim()) fail("basis index out of range", line);
            DiskKey key{detail::split_ints(beta), detail::split_ints(inputs),
                        sorted_multiset(detail::split_ints(interior))};
            auto [it, fresh] = disk_acc.emplace(key, model.zero_real());
            if (it->second.coords[coord] != 0) fail("duplicate disk entry", line);
            it->second.coords[coord] = rational_from_string(value);
        } else if (tag == "point") {
            std::string beta, interior, value;
            if (!(fields >> beta >> interior >> value))
                fail("malformed point line", line);
            points.emplace_back(PointKey{detail::split_ints(beta),
                                         sorted_multiset(
                                             detail::split_ints(interior))},
                                rational_from_string(value));
        } else {
            fail("unknown record", line);
        }
    }
    if (!saw_magic) throw ConfigError("store file: missing 'qstore 1' header");
    if (!cutoff) throw ConfigError("store file: missing cutoff");
    if (basis_seen != model.dim())
        throw ConfigError("store file: basis does not match the cochain model");
    if (interior_seen != ring.interior().size())
        throw ConfigError("store file: interior classes do not match the ring");
    if (classes_seen != ring.classes().size())
        throw ConfigError("store file: classes do not match the ring");

    QOperators q(ring, model, *cutoff);
    for (auto& [key, value] : disk_acc) q.set_disk(key, value);
    for (auto& [key, value] : points) {
        if (q.point_entries().count(key))
            throw ConfigError("store file: duplicate point entry");
        q.set_point(key, value);
    }
    return q;
}

}  // namespace ogw
