#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <stdexcept>
#include <string>

namespace kv {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct PoleAtPoint : std::runtime_error {
    PoleAtPoint() : std::runtime_error("evaluation point lies on the excluded locus (A=B or a zero coordinate)") {}
};

struct NonExactSpecialization : std::runtime_error {
    NonExactSpecialization()
        : std::runtime_error("specialized denominator does not divide the numerator exactly") {}
};

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Exponent triple of a monomial A^eA * B^eB * a^ea.
struct Exponents {
    int eA = 0;
    int eB = 0;
    int ea = 0;
    auto operator<=>(const Exponents&) const = default;
};

/// Integer Laurent polynomial in the three variables A, B, a.
/// Invariant: no stored coefficient is zero; equality is structural.
class LaurentPoly {
  public:
    using TermMap = std::map<Exponents, Int>;

    LaurentPoly() = default;
    static LaurentPoly monomial(Int coeff, int eA = 0, int eB = 0, int ea = 0);
    static LaurentPoly constant(Int value) { return monomial(std::move(value)); }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    /// Adds c * A^e.eA B^e.eB a^e.ea, erasing the term if it cancels.
    void add_term(const Exponents& e, const Int& c);

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& rhs) const;
    LaurentPoly operator-(const LaurentPoly& rhs) const;
    LaurentPoly operator*(const LaurentPoly& rhs) const;
    bool operator==(const LaurentPoly& rhs) const = default;

    /// Substitutes A = B (used as the divisibility-by-(A-B) remainder test).
    LaurentPoly substitute_A_equals_B() const;

    /// Exact division by (A - B); returns false and leaves *this untouched when
    /// the remainder is nonzero. Division treats the polynomial as univariate
    /// in A over Laurent coefficients in B and a; (A - B) is monic in A.
    bool divide_by_A_minus_B(LaurentPoly& quotient) const;

    Rational eval(const Rational& vA, const Rational& vB, const Rational& va) const;

  private:
    TermMap terms_;
};

LaurentPoly A_minus_B();

/// Element of Z[A^{+-1}, B^{+-1}, a^{+-1}] localized at (A - B), stored as
/// num / (A-B)^denom_pow. Canonical form: denom_pow == 0, or (A-B) does not
/// divide num. Values are immutable; all operations are pure.
class RingElem {
  public:
    RingElem() = default;  // zero
    RingElem(int v) : RingElem(LaurentPoly::constant(v), 0) {}

    /// Canonicalizing constructor: cancels (A-B) factors while possible.
    RingElem(LaurentPoly num, int denom_pow);

    static RingElem monomial(Int coeff, int eA = 0, int eB = 0, int ea = 0) {
        return RingElem(LaurentPoly::monomial(std::move(coeff), eA, eB, ea), 0);
    }

    const LaurentPoly& num() const { return num_; }
    int denom_pow() const { return denom_pow_; }
    bool is_zero() const { return num_.is_zero(); }

    RingElem operator-() const;
    RingElem operator+(const RingElem& rhs) const;
    RingElem operator-(const RingElem& rhs) const;
    RingElem operator*(const RingElem& rhs) const;
    bool operator==(const RingElem& rhs) const = default;

    RingElem pow(int n) const;  // n may be negative only for monomial units

    Rational eval_rational(const Rational& vA, const Rational& vB, const Rational& va) const;

  private:
    LaurentPoly num_;
    int denom_pow_ = 0;
};

/// The named structure constants of the calculus plus ring units.
enum class ConstantName { Mu, BigO, Gamma, Xi, SmallA, SmallAInv, VarA, VarB, One, Zero };

RingElem ring_constant(ConstantName name);
RingElem ring_constant(const std::string& name);  // mu|bigO|gamma|xi|a|ainv|A|B|one|zero

RingElem const_mu();
RingElem const_big_o();
RingElem const_gamma();
RingElem const_xi();

/// Univariate integer Laurent polynomial in A. No zero coefficients.
class UniLaurent {
  public:
    using TermMap = std::map<int, Int>;

    UniLaurent() = default;
    UniLaurent(int v) { add_term(0, v); }
    static UniLaurent monomial(Int coeff, int e);

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    void add_term(int e, const Int& c);

    UniLaurent operator-() const;
    UniLaurent operator+(const UniLaurent& rhs) const;
    UniLaurent operator-(const UniLaurent& rhs) const;
    UniLaurent operator*(const UniLaurent& rhs) const;
    bool operator==(const UniLaurent& rhs) const = default;

    UniLaurent pow(int n) const;  // n >= 0

    /// Exact division by (A - A^{-1}); false when a remainder is left.
    bool divide_by_A_minus_Ainv(UniLaurent& quotient) const;

  private:
    TermMap terms_;
};

/// Specialization homomorphisms: B -> A^{-1} together with a -> A (planar
/// test), a -> -A^3 (bracket), a -> A^2 (yamada).
enum class Spec { PlanarTest, Bracket, Yamada };

Spec spec_from_string(const std::string& name);  // planar-test|bracket|yamada

/// Applies the chosen specialization. Throws NonExactSpecialization when the
/// substituted (A - A^{-1})^k denominator does not divide exactly.
UniLaurent specialize(const RingElem& x, Spec spec);

std::string to_string(const LaurentPoly& p);
std::string to_string(const RingElem& x);
std::string to_string(const UniLaurent& p);

}  // namespace kv
