#ifndef UTN_CLASSIFY3_HPP
#define UTN_CLASSIFY3_HPP

// UT_3: lambda-parametrized general forms of id-matching, (12)-matching and
// interchangeable products, their associators, the automorphism action, the
// normal-form case ladders, and an exhaustive orbit census over small F_q.
//
// Basis order is (e12, e13, e23); automorphisms are
//   e12 -> a11 e12 + a31 e13,  e23 -> a22 e23 + a32 e13,  e13 -> a11 a22 e13.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "identity.hpp"

namespace utn {

enum class LambdaForm { IdForm8, TwelveForm6, InterForm6 };

inline std::size_t form_length(LambdaForm form) { return form == LambdaForm::IdForm8 ? 8 : 6; }

inline IdentityKind form_kind(LambdaForm form) {
  switch (form) {
    case LambdaForm::IdForm8: return IdentityKind::MatchId;
    case LambdaForm::TwelveForm6: return IdentityKind::MatchTwelve;
    case LambdaForm::InterForm6: return IdentityKind::Interchangeable;
  }
  return IdentityKind::Compatible;
}

inline LambdaForm kind_form(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::MatchId: return LambdaForm::IdForm8;
    case IdentityKind::MatchTwelve: return LambdaForm::TwelveForm6;
    case IdentityKind::Interchangeable: return LambdaForm::InterForm6;
    default: break;
  }
  throw UsageError("no UT_3 general form exists for the " + kind_name(kind) + " identity");
}

/// Coordinates lambda_1..lambda_k of a general form.
class LambdaVector {
 public:
  LambdaVector(LambdaForm form, std::vector<Scalar> values) : form_(form), values_(std::move(values)) {
    if (values_.size() != form_length(form))
      throw UsageError("form needs " + std::to_string(form_length(form)) + " lambda values, got " +
                       std::to_string(values_.size()));
    for (const Scalar& v : values_)
      if (!(v.field() == values_.front().field())) throw UsageError("lambda values mix fields");
  }

  static LambdaVector zero(LambdaForm form, FieldSpec field) {
    return LambdaVector(form, std::vector<Scalar>(form_length(form), Scalar::zero(field)));
  }

  /// Zero except lambda_k = value for each (k, value).
  static LambdaVector with(LambdaForm form, FieldSpec field, const std::vector<std::pair<int, long>>& set) {
    LambdaVector v = zero(form, field);
    for (const auto& [k, value] : set) v.values_.at(static_cast<std::size_t>(k - 1)) = Scalar::from_int(field, value);
    return v;
  }

  LambdaForm form() const { return form_; }
  FieldSpec field() const { return values_.front().field(); }
  const std::vector<Scalar>& values() const { return values_; }

  /// 1-based, as lambda_k.
  const Scalar& operator[](int k) const { return values_.at(static_cast<std::size_t>(k - 1)); }

  friend bool operator==(const LambdaVector&, const LambdaVector&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < values_.size(); ++k) os << (k ? "," : "") << values_[k].to_string();
    os << ")";
    return os.str();
  }

 private:
  LambdaForm form_;
  std::vector<Scalar> values_;
};

namespace detail {

inline const Dimension kDim3{3};
inline const BasisIndex kE12{1, 2};
inline const BasisIndex kE13{1, 3};
inline const BasisIndex kE23{2, 3};

/// (pair, output, lambda index) for every structure constant of a form.
struct FormSlot {
  BasisIndex a, b, out;
  int lambda;
};

inline const std::vector<FormSlot>& form_slots(LambdaForm form) {
  static const std::vector<FormSlot> id = {
      {kE12, kE12, kE12, 1}, {kE12, kE12, kE13, 5}, {kE12, kE13, kE13, 1}, {kE12, kE23, kE13, 2},
      {kE13, kE12, kE13, 6}, {kE13, kE23, kE13, 7}, {kE23, kE12, kE12, 3}, {kE23, kE12, kE23, 6},
      {kE23, kE12, kE13, 8}, {kE23, kE13, kE13, 3}, {kE23, kE23, kE13, 4}, {kE23, kE23, kE23, 7}};
  static const std::vector<FormSlot> twelve = {
      {kE12, kE12, kE12, 5}, {kE12, kE12, kE13, 1}, {kE12, kE23, kE12, 6}, {kE12, kE23, kE13, 2},
      {kE12, kE23, kE23, 5}, {kE23, kE12, kE13, 3}, {kE23, kE23, kE13, 4}, {kE23, kE23, kE23, 6}};
  static const std::vector<FormSlot> inter = {
      {kE12, kE12, kE13, 1}, {kE12, kE23, kE12, 6}, {kE12, kE23, kE13, 2}, {kE12, kE23, kE23, 5},
      {kE23, kE12, kE13, 3}, {kE12, kE13, kE13, 5}, {kE13, kE23, kE13, 6}, {kE23, kE23, kE13, 4}};
  switch (form) {
    case LambdaForm::IdForm8: return id;
    case LambdaForm::TwelveForm6: return twelve;
    case LambdaForm::InterForm6: return inter;
  }
  return id;
}

}  // namespace detail

inline Product lambda_to_product(const LambdaVector& v) {
  std::vector<std::pair<Product::Key, std::vector<std::pair<BasisIndex, Scalar>>>> entries;
  for (const auto& slot : detail::form_slots(v.form())) entries.push_back({{slot.a, slot.b}, {{slot.out, v[slot.lambda]}}});
  return Product::from_entries(detail::kDim3, v.field(), entries);
}

/// Reads the lambdas off p; rejects p when it is not of the given form.
inline LambdaVector product_to_lambda(const Product& p, LambdaForm form) {
  if (p.dim().n() != 3) throw UsageError("general forms live on UT_3, got UT_" + std::to_string(p.dim().n()));
  std::vector<Scalar> values(form_length(form), Scalar::zero(p.field()));
  for (const auto& slot : detail::form_slots(form)) values[static_cast<std::size_t>(slot.lambda - 1)] = p.at(slot.a, slot.b).coeff(slot.out);
  LambdaVector v(form, std::move(values));
  Product rebuilt = lambda_to_product(v);
  if (!(rebuilt == p)) {
    for (BasisIndex a : basis(detail::kDim3))
      for (BasisIndex b : basis(detail::kDim3))
        if (!(rebuilt.at(a, b) == p.at(a, b)))
          throw PreconditionError("product is not of the " + kind_name(form_kind(form)) + " general form on UT_3: " +
                                  a.to_string() + "*" + b.to_string() + " = " + p.at(a, b).to_string() +
                                  " does not fit (closest fit " + rebuilt.at(a, b).to_string() + ")");
  }
  return v;
}

/// Nonzero associators of the basis units, by closed formulas in the lambdas.
inline std::map<BasisTriple, Element> closed_form_associators(const LambdaVector& v) {
  using detail::kE12;
  using detail::kE13;
  using detail::kE23;
  FieldSpec f = v.field();
  auto l = [&](int k) { return v[k]; };
  auto two = Scalar::from_int(f, 2);
  std::map<BasisTriple, Element> out;
  auto put = [&](BasisIndex a, BasisIndex b, BasisIndex c, Scalar c12, Scalar c13, Scalar c23) {
    Element e = Element::from_terms(detail::kDim3, f, {{kE12, c12}, {kE13, c13}, {kE23, c23}});
    if (!e.is_zero()) out.emplace(BasisTriple{a, b, c}, std::move(e));
  };
  Scalar z = Scalar::zero(f);
  switch (v.form()) {
    case LambdaForm::IdForm8:
      put(kE12, kE12, kE12, z, l(5) * (l(6) - l(1)), z);
      put(kE12, kE12, kE23, z, l(5) * l(7), z);
      put(kE12, kE23, kE12, -(l(1) * l(3)), -(l(1) * l(8) + l(5) * l(3)), z);
      put(kE12, kE23, kE23, z, -(l(1) * l(4)), z);
      put(kE12, kE23, kE13, z, -(l(1) * l(3)), z);
      put(kE23, kE12, kE12, l(6) * l(3), l(8) * (two * l(6) - l(1)), l(6) * (l(6) - l(1)));
      put(kE23, kE12, kE23, z, l(7) * l(8) + l(6) * l(4), l(7) * l(6));
      put(kE23, kE12, kE13, z, l(6) * l(3), z);
      put(kE13, kE23, kE12, z, -(l(6) * l(3)), z);
      put(kE23, kE23, kE12, l(3) * (l(7) - l(3)), l(8) * (l(7) - two * l(3)), -(l(6) * l(3)));
      put(kE23, kE23, kE23, z, l(4) * (l(7) - l(3)), z);
      put(kE23, kE23, kE13, z, l(3) * (l(7) - l(3)), z);
      put(kE13, kE12, kE12, z, l(6) * (l(6) - l(1)), z);
      put(kE13, kE12, kE23, z, l(7) * l(6), z);
      break;
    case LambdaForm::TwelveForm6:
      put(kE12, kE12, kE23, -(l(5) * l(6)), -(l(1) * l(6)), z);
      put(kE12, kE23, kE12, l(5) * l(6), l(1) * l(6) + l(3) * l(5), z);
      put(kE12, kE23, kE23, z, l(4) * l(5), l(5) * l(6));
      put(kE23, kE12, kE12, z, -(l(3) * l(5)), z);
      put(kE23, kE12, kE23, z, -(l(3) * l(6) + l(4) * l(5)), -(l(5) * l(6)));
      put(kE23, kE23, kE12, z, l(3) * l(6), z);
      break;
    case LambdaForm::InterForm6:
      put(kE12, kE12, kE12, z, -(l(1) * l(5)), z);
      put(kE12, kE12, kE23, -(l(5) * l(6)), -(two * l(2) * l(5)), -(l(5) * l(5)));
      put(kE12, kE12, kE13, z, -(l(5) * l(5)), z);
      put(kE12, kE23, kE12, z, l(1) * l(6), z);
      put(kE12, kE23, kE23, l(6) * l(6), two * l(2) * l(6), l(5) * l(6));
      put(kE12, kE23, kE13, z, l(5) * l(6), z);
      put(kE23, kE12, kE23, z, -(l(4) * l(5)), z);
      put(kE23, kE23, kE23, z, l(4) * l(6), z);
      put(kE13, kE12, kE23, z, -(l(5) * l(6)), z);
      put(kE13, kE23, kE23, z, l(6) * l(6), z);
      break;
  }
  return out;
}

inline bool lambda_associative(const LambdaVector& v) { return closed_form_associators(v).empty(); }

/// Parameters of an automorphism of (UT_3, .); a11 and a22 must be nonzero.
struct Aut3Params {
  Scalar a11, a22, a31, a32;

  static Aut3Params identity(FieldSpec f) {
    return {Scalar::one(f), Scalar::one(f), Scalar::zero(f), Scalar::zero(f)};
  }

  friend bool operator==(const Aut3Params&, const Aut3Params&) = default;

  std::string to_string() const {
    return "(" + a11.to_string() + "," + a22.to_string() + "," + a31.to_string() + "," + a32.to_string() + ")";
  }
};

inline LinearMap aut3_map(const Aut3Params& p) {
  if (p.a11.is_zero() || p.a22.is_zero()) throw UsageError("automorphism parameters need a11 != 0 and a22 != 0");
  using detail::kE12;
  using detail::kE13;
  using detail::kE23;
  FieldSpec f = p.a11.field();
  const Dimension& d = detail::kDim3;
  // Images in basis order e12, e13, e23.
  return LinearMap::from_images(d, f,
                                {Element::from_terms(d, f, {{kE12, p.a11}, {kE13, p.a31}}),
                                 Element::from_terms(d, f, {{kE13, p.a11 * p.a22}}),
                                 Element::from_terms(d, f, {{kE23, p.a22}, {kE13, p.a32}})});
}

namespace detail {

inline LambdaVector transform_by_pushforward(const LambdaVector& v, const Aut3Params& p) {
  return product_to_lambda(pushforward(lambda_to_product(v), aut3_map(p)), v.form());
}

inline LambdaVector transform_closed_form(const LambdaVector& v, const Aut3Params& p) {
  auto l = [&](int k) { return v[k]; };
  Scalar i11 = p.a11.inv();
  Scalar i22 = p.a22.inv();
  Scalar d = p.a11 * p.a22;
  std::vector<Scalar> w(v.values().size());
  auto set = [&](int k, Scalar value) { w[static_cast<std::size_t>(k - 1)] = std::move(value); };
  if (v.form() == LambdaForm::IdForm8) {
    set(1, i11 * l(1));
    set(5, i11 * i11 * (d * l(5) - p.a31 * l(6)));
    set(7, i22 * l(7));
    set(4, i22 * i22 * (d * l(4) - p.a32 * l(3)));
    set(2, i11 * i22 * (d * l(2) - p.a32 * l(1) - p.a31 * l(7)));
    set(3, i22 * l(3));
    set(6, i11 * l(6));
    set(8, l(8));
  } else {
    set(5, i11 * l(5));
    set(1, i11 * i11 * (d * l(1) + p.a31 * l(5)));
    set(6, i22 * l(6));
    set(2, i11 * i22 * (d * l(2) + p.a32 * l(5) + p.a31 * l(6)));
    set(3, l(3));
    set(4, i22 * i22 * (d * l(4) + p.a32 * l(6)));
  }
  return LambdaVector(v.form(), std::move(w));
}

}  // namespace detail

/// Lambdas of the pushforward of v along the automorphism p. Id and (12) forms
/// use closed formulas; the interchangeable form goes through pushforward.
inline LambdaVector transform_lambda(const LambdaVector& v, const Aut3Params& p) {
  if (p.a11.is_zero() || p.a22.is_zero()) throw UsageError("automorphism parameters need a11 != 0 and a22 != 0");
  if (v.form() == LambdaForm::InterForm6) return detail::transform_by_pushforward(v, p);
  LambdaVector w = detail::transform_closed_form(v, p);
#ifdef UTN_CHECKED_TRANSFORMS
  if (!(w == detail::transform_by_pushforward(v, p)))
    throw Error("internal: closed-form transform disagrees with pushforward for lambda " + v.to_string() +
                " and automorphism " + p.to_string());
#endif
  return w;
}

/// Isomorphism class label: case number of the normal-form list plus the
/// residual parameters (alpha, beta, gamma) the case carries.
struct CanonicalClass {
  IdentityKind kind;
  int case_tag;
  std::vector<Scalar> params;

  friend bool operator==(const CanonicalClass&, const CanonicalClass&) = default;

  std::string to_string() const {
    std::string out = kind_token(kind) + " case " + std::to_string(case_tag);
    if (params.empty()) return out;
    out += " (";
    for (std::size_t k = 0; k < params.size(); ++k) out += (k ? "," : "") + params[k].to_string();
    return out + ")";
  }
};

inline std::size_t case_count(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::MatchId: return 8;
    case IdentityKind::MatchTwelve: return 5;
    case IdentityKind::Interchangeable: return 3;
    default: break;
  }
  throw UsageError("no UT_3 classification exists for the " + kind_name(kind) + " identity");
}

namespace detail {

/// Lambda positions holding (alpha, beta, gamma) for each parametrized case.
inline std::vector<int> param_slots(IdentityKind kind, int case_tag) {
  if (kind == IdentityKind::MatchId) {
    if (case_tag == 4) return {5, 2, 8};
    if (case_tag == 7 || case_tag == 8) return {2, 8};
    return {};
  }
  if (kind == IdentityKind::Interchangeable) case_tag += 2;
  if (case_tag == 3) return {1, 2, 3};
  if (case_tag == 4 || case_tag == 5) return {2, 3};
  return {};
}

/// Lambdas fixed to 1 in the normal form of each case.
inline std::vector<int> unit_slots(IdentityKind kind, int case_tag) {
  if (kind == IdentityKind::MatchId) {
    static const std::vector<std::vector<int>> ones = {{3, 7}, {1, 7}, {7}, {4}, {1, 6}, {1}, {5}, {}};
    return ones.at(static_cast<std::size_t>(case_tag - 1));
  }
  if (kind == IdentityKind::Interchangeable) case_tag += 2;
  static const std::vector<std::vector<int>> ones = {{5}, {6}, {4}, {1}, {}};
  return ones.at(static_cast<std::size_t>(case_tag - 1));
}

inline void require_case(IdentityKind kind, int case_tag) {
  if (case_tag < 1 || static_cast<std::size_t>(case_tag) > case_count(kind))
    throw UsageError(kind_name(kind) + " has no normal-form case " + std::to_string(case_tag));
}

}  // namespace detail

/// Lambda vector of the normal form named by cls.
inline LambdaVector canonical_representative(const CanonicalClass& cls, FieldSpec field) {
  detail::require_case(cls.kind, cls.case_tag);
  std::vector<int> slots = detail::param_slots(cls.kind, cls.case_tag);
  if (slots.size() != cls.params.size())
    throw UsageError("case " + std::to_string(cls.case_tag) + " carries " + std::to_string(slots.size()) + " parameters");
  LambdaForm form = kind_form(cls.kind);
  std::vector<Scalar> values(form_length(form), Scalar::zero(field));
  for (int k : detail::unit_slots(cls.kind, cls.case_tag)) values[static_cast<std::size_t>(k - 1)] = Scalar::one(field);
  for (std::size_t k = 0; k < slots.size(); ++k) values[static_cast<std::size_t>(slots[k] - 1)] = cls.params[k];
  return LambdaVector(form, std::move(values));
}

struct CanonicalResult {
  CanonicalClass cls;
  Aut3Params witness;
};

/// Normal form of an associative v and an automorphism carrying v onto it.
inline CanonicalResult canonical_form(const LambdaVector& v) {
  auto assoc = closed_form_associators(v);
  if (!assoc.empty()) {
    const auto& [triple, value] = *assoc.begin();
    throw PreconditionError("structure is not associative: [" + triple.a.to_string() + "," + triple.b.to_string() + "," +
                            triple.c.to_string() + "] = " + value.to_string());
  }
  FieldSpec f = v.field();
  Scalar one = Scalar::one(f);
  Scalar zero = Scalar::zero(f);
  auto l = [&](int k) { return v[k]; };
  auto nz = [&](int k) { return !v[k].is_zero(); };
  IdentityKind kind = form_kind(v.form());
  int tag = 0;
  Aut3Params w = Aut3Params::identity(f);
  auto pick = [&](int case_tag, Aut3Params witness) {
    tag = case_tag;
    w = std::move(witness);
  };
  if (v.form() == LambdaForm::IdForm8) {
    if (nz(3)) pick(1, {one, l(3), l(2), l(4)});
    else if (nz(7) && nz(1)) pick(2, {l(1), l(7), l(1) * l(2), zero});
    else if (nz(7)) pick(3, {one, l(7), l(2), zero});
    else if (nz(4)) pick(4, {one, l(4), zero, zero});
    else if (nz(6)) pick(5, {l(6), one, l(5), l(2)});
    else if (nz(1)) pick(6, {l(1), one, zero, l(2)});
    else if (nz(5)) pick(7, {l(5), one, zero, zero});
    else pick(8, w);
  } else {
    // The interchangeable ladder is the (12) ladder from its third case on.
    bool twelve = v.form() == LambdaForm::TwelveForm6;
    if (twelve && nz(5)) pick(1, {l(5), one, -l(1), -l(2)});
    else if (twelve && nz(6)) pick(2, {one, l(6), -l(2), -l(4)});
    else if (nz(4)) pick(3, {one, l(4), zero, zero});
    else if (nz(1)) pick(4, {l(1), one, zero, zero});
    else pick(5, w);
    if (!twelve) tag -= 2;
  }
  LambdaVector image = transform_lambda(v, w);
  CanonicalClass cls{kind, tag, {}};
  for (int k : detail::param_slots(kind, tag)) cls.params.push_back(image[k]);
  if (!(image == canonical_representative(cls, f)))
    throw Error("internal: witness " + w.to_string() + " maps " + v.to_string() + " to " + image.to_string() +
                ", not to the normal form of " + cls.to_string());
  return {std::move(cls), std::move(w)};
}

/// A random associative vector of the given case, drawn from the case's free
/// parameters (nonzero where the case requires it).
inline LambdaVector random_associative(IdentityKind kind, int case_tag, std::mt19937_64& rng, FieldSpec f) {
  detail::require_case(kind, case_tag);
  LambdaForm form = kind_form(kind);
  std::vector<Scalar> lam(form_length(form), Scalar::zero(f));
  auto set = [&](int k, Scalar x) { lam[static_cast<std::size_t>(k - 1)] = std::move(x); };
  auto any = [&] { return random_scalar(rng, f); };
  auto nonzero = [&] { return random_nonzero_scalar(rng, f); };
  if (kind == IdentityKind::MatchId) {
    switch (case_tag) {
      case 1: { Scalar s = nonzero(); set(3, s); set(7, s); set(2, any()); set(4, any()); break; }
      case 2: set(7, nonzero()); set(1, nonzero()); set(2, any()); break;
      case 3: set(7, nonzero()); set(2, any()); break;
      case 4: set(4, nonzero()); set(2, any()); set(5, any()); set(8, any()); break;
      case 5: { Scalar s = nonzero(); set(6, s); set(1, s); set(2, any()); set(5, any()); break; }
      case 6: set(1, nonzero()); set(2, any()); break;
      case 7: set(5, nonzero()); set(2, any()); set(8, any()); break;
      default: set(2, any()); set(8, any()); break;
    }
  } else {
    int tag = kind == IdentityKind::Interchangeable ? case_tag + 2 : case_tag;
    switch (tag) {
      case 1: set(5, nonzero()); set(1, any()); set(2, any()); break;
      case 2: set(6, nonzero()); set(2, any()); set(4, any()); break;
      case 3: set(4, nonzero()); set(1, any()); set(2, any()); set(3, any()); break;
      case 4: set(1, nonzero()); set(2, any()); set(3, any()); break;
      default: set(2, any()); set(3, any()); break;
    }
  }
  return LambdaVector(form, std::move(lam));
}

inline Aut3Params random_aut3(std::mt19937_64& rng, FieldSpec f) {
  return {random_nonzero_scalar(rng, f), random_nonzero_scalar(rng, f), random_scalar(rng, f), random_scalar(rng, f)};
}

// --- orbit census ----------------------------------------------------------

struct OrbitRecord {
  CanonicalClass label;
  std::size_t size;
  LambdaVector representative;  // first member in enumeration order
};

struct OrbitCensus {
  IdentityKind kind;
  std::uint32_t q;
  std::size_t enumerated = 0;
  std::size_t associative = 0;
  std::vector<OrbitRecord> orbits;  // sorted by label
  /// Orbits whose members received more than one label, or labels shared by
  /// several orbits. Empty iff labels and orbits are in bijection.
  std::vector<std::string> violations;

  bool bijective() const { return violations.empty(); }
};

/// Exhaustive orbits of associative general-form vectors over F_q under all
/// (q-1)^2 q^2 automorphisms, each orbit labelled by canonical_form.
inline OrbitCensus orbit_census(IdentityKind kind, std::uint32_t q) {
  if (q != 2 && q != 3 && q != 5) throw UsageError("orbit census supports q in {2, 3, 5}, got " + std::to_string(q));
  LambdaForm form = kind_form(kind);
  FieldSpec f = FieldSpec::prime(q);
  std::size_t len = form_length(form);
  OrbitCensus census{kind, q, 0, 0, {}, {}};

  auto encode = [&](const LambdaVector& v) {
    std::size_t code = 0;
    for (std::size_t k = len; k-- > 0;) code = code * q + v.values()[k].residue();
    return code;
  };
  auto decode = [&](std::size_t code) {
    std::vector<Scalar> values;
    for (std::size_t k = 0; k < len; ++k, code /= q) values.push_back(Scalar::from_int(f, static_cast<long>(code % q)));
    return LambdaVector(form, std::move(values));
  };

  std::size_t total = 1;
  for (std::size_t k = 0; k < len; ++k) total *= q;
  census.enumerated = total;

  std::vector<Aut3Params> group;
  for (std::uint32_t a11 = 1; a11 < q; ++a11)
    for (std::uint32_t a22 = 1; a22 < q; ++a22)
      for (std::uint32_t a31 = 0; a31 < q; ++a31)
        for (std::uint32_t a32 = 0; a32 < q; ++a32)
          group.push_back({Scalar::from_int(f, a11), Scalar::from_int(f, a22), Scalar::from_int(f, a31),
                           Scalar::from_int(f, a32)});

  std::vector<bool> assoc(total, false);
  for (std::size_t code = 0; code < total; ++code) {
    assoc[code] = lambda_associative(decode(code));
    if (assoc[code]) ++census.associative;
  }

  std::vector<bool> seen(total, false);
  std::vector<std::pair<CanonicalClass, std::size_t>> labels;  // label, orbit record index
  for (std::size_t code = 0; code < total; ++code) {
    if (!assoc[code] || seen[code]) continue;
    LambdaVector rep = decode(code);
    std::vector<std::size_t> members;
    for (const Aut3Params& g : group) {
      std::size_t image = encode(transform_lambda(rep, g));
      if (!assoc[image]) throw Error("internal: automorphism image of an associative vector is not associative");
      if (!seen[image]) {
        seen[image] = true;
        members.push_back(image);
      }
    }
    CanonicalClass label = canonical_form(rep).cls;
    for (std::size_t member : members) {
      CanonicalClass other = canonical_form(decode(member)).cls;
      if (!(other == label)) {
        census.violations.push_back("orbit of " + rep.to_string() + " carries labels " + label.to_string() + " and " +
                                    other.to_string());
        break;
      }
    }
    census.orbits.push_back({label, members.size(), rep});
  }

  auto key = [](const CanonicalClass& c) {
    std::vector<std::uint32_t> k = {static_cast<std::uint32_t>(c.case_tag)};
    for (const Scalar& s : c.params) k.push_back(s.residue());
    return k;
  };
  std::stable_sort(census.orbits.begin(), census.orbits.end(),
                   [&](const OrbitRecord& x, const OrbitRecord& y) { return key(x.label) < key(y.label); });
  for (std::size_t k = 1; k < census.orbits.size(); ++k)
    if (census.orbits[k].label == census.orbits[k - 1].label)
      census.violations.push_back("label " + census.orbits[k].label.to_string() + " names more than one orbit");
  return census;
}

}  // namespace utn

#endif  // UTN_CLASSIFY3_HPP
