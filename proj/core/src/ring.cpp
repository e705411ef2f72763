#include "kv/ring.hpp"

#include <sstream>
#include <vector>

namespace kv {

LaurentPoly LaurentPoly::monomial(Int coeff, int eA, int eB, int ea) {
    LaurentPoly p;
    p.add_term({eA, eB, ea}, coeff);
    return p;
}

void LaurentPoly::add_term(const Exponents& e, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& rhs) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& rhs) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& rhs) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : rhs.terms_)
            r.add_term({e1.eA + e2.eA, e1.eB + e2.eB, e1.ea + e2.ea}, c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::substitute_A_equals_B() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.add_term({0, e.eA + e.eB, e.ea}, c);
    return r;
}

bool LaurentPoly::divide_by_A_minus_B(LaurentPoly& quotient) const {
    if (is_zero()) {
        quotient = LaurentPoly();
        return true;
    }
    // Group terms by the exponent of A; coefficients live in Z[B^{+-1}, a^{+-1}].
    std::map<int, LaurentPoly> by_A;
    int min_eA = terms_.begin()->first.eA;
    int max_eA = min_eA;
    for (const auto& [e, c] : terms_) {
        by_A[e.eA].add_term({0, e.eB, e.ea}, c);
        min_eA = std::min(min_eA, e.eA);
        max_eA = std::max(max_eA, e.eA);
    }
    // Synthetic division of sum c_i A^i (i from min_eA..max_eA) by (A - B):
    // q_{i-1} = c_i + B * q_i going down; remainder = c_{min} + B * q_{min}.
    LaurentPoly B = LaurentPoly::monomial(1, 0, 1, 0);
    LaurentPoly carry;  // q_i while scanning down
    std::map<int, LaurentPoly> q;
    for (int i = max_eA; i > min_eA; --i) {
        LaurentPoly ci = by_A.count(i) ? by_A[i] : LaurentPoly();
        LaurentPoly qi = ci + B * carry;
        if (!qi.is_zero()) q[i - 1] = qi;
        carry = std::move(qi);
    }
    LaurentPoly c_min = by_A.count(min_eA) ? by_A[min_eA] : LaurentPoly();
    LaurentPoly remainder = c_min + B * carry;
    if (!remainder.is_zero()) return false;
    LaurentPoly result;
    for (const auto& [i, coeff] : q)
        for (const auto& [e, c] : coeff.terms()) result.add_term({i, e.eB, e.ea}, c);
    quotient = std::move(result);
    return true;
}

Rational LaurentPoly::eval(const Rational& vA, const Rational& vB, const Rational& va) const {
    auto powq = [](const Rational& base, int e) {
        Rational r = 1;
        Rational b = e >= 0 ? base : Rational(1) / base;
        for (int i = 0; i < std::abs(e); ++i) r *= b;
        return r;
    };
    Rational total = 0;
    for (const auto& [e, c] : terms_)
        total += Rational(c) * powq(vA, e.eA) * powq(vB, e.eB) * powq(va, e.ea);
    return total;
}

LaurentPoly A_minus_B() {
    return LaurentPoly::monomial(1, 1, 0, 0) - LaurentPoly::monomial(1, 0, 1, 0);
}

RingElem::RingElem(LaurentPoly num, int denom_pow) : num_(std::move(num)), denom_pow_(denom_pow) {
    if (denom_pow_ < 0) throw UsageError("negative denominator power");
    if (num_.is_zero()) {
        denom_pow_ = 0;
        return;
    }
    LaurentPoly quotient;
    while (denom_pow_ > 0 && num_.divide_by_A_minus_B(quotient)) {
        num_ = quotient;
        --denom_pow_;
        if (num_.is_zero()) {
            denom_pow_ = 0;
            return;
        }
    }
}

RingElem RingElem::operator-() const {
    RingElem r;
    r.num_ = -num_;
    r.denom_pow_ = denom_pow_;
    return r;
}

RingElem RingElem::operator+(const RingElem& rhs) const {
    int k = std::max(denom_pow_, rhs.denom_pow_);
    LaurentPoly lhs_num = num_;
    LaurentPoly rhs_num = rhs.num_;
    LaurentPoly d = A_minus_B();
    for (int i = denom_pow_; i < k; ++i) lhs_num = lhs_num * d;
    for (int i = rhs.denom_pow_; i < k; ++i) rhs_num = rhs_num * d;
    return RingElem(lhs_num + rhs_num, k);
}

RingElem RingElem::operator-(const RingElem& rhs) const { return *this + (-rhs); }

RingElem RingElem::operator*(const RingElem& rhs) const {
    // (A - B) is prime, so products of canonical numerators stay canonical;
    // the constructor re-checks anyway.
    return RingElem(num_ * rhs.num_, denom_pow_ + rhs.denom_pow_);
}

RingElem RingElem::pow(int n) const {
    if (n < 0) {
        if (num_.terms().size() != 1 || denom_pow_ != 0)
            throw UsageError("negative powers only defined for monomial units");
        const auto& [e, c] = *num_.terms().begin();
        if (c != 1 && c != -1) throw UsageError("negative powers only defined for monomial units");
        Int coeff = (c == -1 && (n % 2 != 0)) ? Int(-1) : Int(1);
        return RingElem::monomial(coeff, n * e.eA, n * e.eB, n * e.ea);
    }
    RingElem r(1);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

Rational RingElem::eval_rational(const Rational& vA, const Rational& vB, const Rational& va) const {
    if (vA == vB || vA == 0 || vB == 0 || va == 0) throw PoleAtPoint();
    Rational denom = 1;
    for (int i = 0; i < denom_pow_; ++i) denom *= (vA - vB);
    return num_.eval(vA, vB, va) / denom;
}

namespace {

RingElem make_mu() {
    // (a - a^{-1})/(A-B) + 1
    LaurentPoly n = LaurentPoly::monomial(1, 0, 0, 1) - LaurentPoly::monomial(1, 0, 0, -1) + A_minus_B();
    return RingElem(n, 1);
}

RingElem make_big_o() {
    // (A a^{-1} - B a)/(A-B) - (A + B)
    LaurentPoly n = LaurentPoly::monomial(1, 1, 0, -1) - LaurentPoly::monomial(1, 0, 1, 1);
    LaurentPoly sum = LaurentPoly::monomial(1, 1, 0, 0) + LaurentPoly::monomial(1, 0, 1, 0);
    return RingElem(n - sum * A_minus_B(), 1);
}

RingElem make_gamma() {
    // (B^2 a - A^2 a^{-1})/(A-B) + AB
    LaurentPoly n = LaurentPoly::monomial(1, 0, 2, 1) - LaurentPoly::monomial(1, 2, 0, -1);
    return RingElem(n + LaurentPoly::monomial(1, 1, 1, 0) * A_minus_B(), 1);
}

RingElem make_xi() {
    // (B^3 a - A^3 a^{-1})/(A-B)
    LaurentPoly n = LaurentPoly::monomial(1, 0, 3, 1) - LaurentPoly::monomial(1, 3, 0, -1);
    return RingElem(n, 1);
}

}  // namespace

RingElem const_mu() {
    static const RingElem v = make_mu();
    return v;
}
RingElem const_big_o() {
    static const RingElem v = make_big_o();
    return v;
}
RingElem const_gamma() {
    static const RingElem v = make_gamma();
    return v;
}
RingElem const_xi() {
    static const RingElem v = make_xi();
    return v;
}

RingElem ring_constant(ConstantName name) {
    switch (name) {
        case ConstantName::Mu: return const_mu();
        case ConstantName::BigO: return const_big_o();
        case ConstantName::Gamma: return const_gamma();
        case ConstantName::Xi: return const_xi();
        case ConstantName::SmallA: return RingElem::monomial(1, 0, 0, 1);
        case ConstantName::SmallAInv: return RingElem::monomial(1, 0, 0, -1);
        case ConstantName::VarA: return RingElem::monomial(1, 1, 0, 0);
        case ConstantName::VarB: return RingElem::monomial(1, 0, 1, 0);
        case ConstantName::One: return RingElem(1);
        case ConstantName::Zero: return RingElem();
    }
    throw UsageError("unknown constant");
}

RingElem ring_constant(const std::string& name) {
    if (name == "mu") return const_mu();
    if (name == "bigO") return const_big_o();
    if (name == "gamma") return const_gamma();
    if (name == "xi") return const_xi();
    if (name == "a") return ring_constant(ConstantName::SmallA);
    if (name == "ainv") return ring_constant(ConstantName::SmallAInv);
    if (name == "A") return ring_constant(ConstantName::VarA);
    if (name == "B") return ring_constant(ConstantName::VarB);
    if (name == "one") return RingElem(1);
    if (name == "zero") return RingElem();
    throw UsageError("unknown constant name: " + name);
}

UniLaurent UniLaurent::monomial(Int coeff, int e) {
    UniLaurent p;
    p.add_term(e, coeff);
    return p;
}

void UniLaurent::add_term(int e, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

UniLaurent UniLaurent::operator-() const {
    UniLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

UniLaurent UniLaurent::operator+(const UniLaurent& rhs) const {
    UniLaurent r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
    return r;
}

UniLaurent UniLaurent::operator-(const UniLaurent& rhs) const {
    UniLaurent r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
    return r;
}

UniLaurent UniLaurent::operator*(const UniLaurent& rhs) const {
    UniLaurent r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : rhs.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

UniLaurent UniLaurent::pow(int n) const {
    if (n < 0) throw UsageError("UniLaurent::pow requires n >= 0");
    UniLaurent r(1);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

bool UniLaurent::divide_by_A_minus_Ainv(UniLaurent& quotient) const {
    if (is_zero()) {
        quotient = UniLaurent();
        return true;
    }
    // P / (A - A^{-1}) = (P * A) / (A^2 - 1).
    UniLaurent shifted;
    for (const auto& [e, c] : terms_) shifted.add_term(e + 1, c);
    // Long division by (A^2 - 1), monic of degree 2, over Laurent exponents.
    UniLaurent rem = shifted;
    UniLaurent q;
    while (!rem.is_zero()) {
        auto top = std::prev(rem.terms_.end());
        auto bot = rem.terms_.begin();
        if (top->first - bot->first < 2) break;  // degree span too small to continue
        int e = top->first - 2;
        Int c = top->second;
        q.add_term(e, c);
        rem.add_term(top->first, -c);
        rem.add_term(e, c);
    }
    // Remaining span < 2: divisible iff rem is exactly c*(A^2-1)*A^e pattern-free, i.e. zero
    // after the loop (span<2 nonzero cannot be a multiple of A^2-1).
    if (!rem.is_zero()) {
        // One more chance: span exactly... any nonzero Laurent poly with exponent span < 2
        // is not divisible by (A^2 - 1).
        return false;
    }
    quotient = std::move(q);
    return true;
}

Spec spec_from_string(const std::string& name) {
    if (name == "planar-test" || name == "planar_test") return Spec::PlanarTest;
    if (name == "bracket") return Spec::Bracket;
    if (name == "yamada") return Spec::Yamada;
    throw UsageError("unknown specialization: " + name);
}

UniLaurent specialize(const RingElem& x, Spec spec) {
    int a_mult = 0;
    bool a_sign = false;  // true when a -> -A^3
    switch (spec) {
        case Spec::PlanarTest: a_mult = 1; break;
        case Spec::Bracket:
            a_mult = 3;
            a_sign = true;
            break;
        case Spec::Yamada: a_mult = 2; break;
    }
    UniLaurent num;
    for (const auto& [e, c] : x.num().terms()) {
        Int coeff = c;
        if (a_sign && (e.ea % 2 != 0)) coeff = -coeff;
        num.add_term(e.eA - e.eB + a_mult * e.ea, coeff);
    }
    for (int i = 0; i < x.denom_pow(); ++i) {
        UniLaurent quotient;
        if (!num.divide_by_A_minus_Ainv(quotient)) throw NonExactSpecialization();
        num = std::move(quotient);
    }
    return num;
}

namespace {

void append_term(std::ostringstream& out, bool first, const Int& coeff, const std::string& vars) {
    Int c = coeff;
    if (first) {
        if (c < 0) {
            out << "-";
            c = -c;
        }
    } else {
        out << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
    }
    if (vars.empty()) {
        out << c.str();
        return;
    }
    if (c != 1) out << c.str() << "*";
    out << vars;
}

void append_var(std::string& vars, const char* name, int e) {
    if (e == 0) return;
    if (!vars.empty()) vars += "*";
    vars += name;
    if (e != 1) vars += "^" + std::to_string(e);
}

}  // namespace

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    // Terms ordered by (eA, eB, ea) descending.
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        std::string vars;
        append_var(vars, "A", it->first.eA);
        append_var(vars, "B", it->first.eB);
        append_var(vars, "a", it->first.ea);
        append_term(out, first, it->second, vars);
        first = false;
    }
    return out.str();
}

std::string to_string(const RingElem& x) {
    if (x.denom_pow() == 0) return to_string(x.num());
    std::ostringstream out;
    out << "(" << to_string(x.num()) << ")/(A-B)^" << x.denom_pow();
    return out.str();
}

std::string to_string(const UniLaurent& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!first) out << " + ";
        if (it->first == 0) {
            out << it->second.str();
        } else {
            out << it->second.str() << "*A^" << it->first;
        }
        first = false;
    }
    return out.str();
}

}  // namespace kv
