#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "spokess/error.hpp"
#include "spokess/fp.hpp"
#include "spokess/grading.hpp"

namespace spokess {

enum class GenKind { polynomial, invertible, exterior, truncated };

inline const char* kind_name(GenKind k)
{
    switch (k) {
    case GenKind::polynomial: return "poly";
    case GenKind::invertible: return "inv";
    case GenKind::exterior: return "ext";
    case GenKind::truncated: return "trunc";
    }
    return "?";
}

// Two-bit parity: bit 0 is s mod 2, bit 1 is the internal m mod 2 (total m + s).
// Elements commute up to (-1)^popcount(pi & pi').
inline unsigned parity_bits(SpokeDegree total, int s)
{
    return static_cast<unsigned>(s & 1) | (static_cast<unsigned>((total.m + s) & 1) << 1);
}
inline int bichar(unsigned a, unsigned b) { return std::popcount(a & b) & 1; }

struct GeneratorSpec {
    std::string name;
    SpokeDegree degree;
    GenKind kind = GenKind::polynomial;
    int bound = 0;  // truncated: x^bound = 0
    int s = 0;      // cohomological degree (only for E_1-type presentations)
    int f = 0;      // filtration

    TriDegree tri() const { return {degree, s, f}; }
    unsigned parity() const { return parity_bits(degree, s); }
    bool operator==(const GeneratorSpec&) const = default;
};

struct Monomial {
    std::vector<int> e;
    auto operator<=>(const Monomial&) const = default;
};

using DegVec = std::array<long, 4>;

inline DegVec degvec(const TriDegree& t) { return {t.total.m, t.total.n, t.s, t.f}; }
inline long dot(const DegVec& w, const DegVec& v) { return w[0] * v[0] + w[1] * v[1] + w[2] * v[2] + w[3] * v[3]; }

inline constexpr long kDefaultCap = 100000;

class GradedAlgebraPresentation {
public:
    GradedAlgebraPresentation(std::uint32_t p, std::vector<GeneratorSpec> gens) : F_(p), gens_(std::move(gens))
    {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            auto& g = gens_[i];
            if (g.name.empty() || g.name.find_first_of(" :*^#") != std::string::npos)
                throw config_error("bad generator name '" + g.name + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (gens_[j].name == g.name)
                    throw config_error("duplicate generator '" + g.name + "'");
            bool odd = bichar(g.parity(), g.parity());
            if (odd != (g.kind == GenKind::exterior))
                throw config_error("generator '" + g.name + "' of degree " + format_degree(g.degree) +
                                   (odd ? " is odd and must be exterior" : " is even and cannot be exterior"));
            if (g.kind == GenKind::truncated && g.bound < 1)
                throw config_error("truncated generator '" + g.name + "' needs a positive bound");
        }
        std::size_t k = gens_.size();
        sign_.assign(k * k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                sign_[i * k + j] = static_cast<char>(bichar(gens_[i].parity(), gens_[j].parity()));
        build_certificate();
    }

    const PrimeField& field() const { return F_; }
    std::uint32_t p() const { return F_.p(); }
    std::size_t size() const { return gens_.size(); }
    const GeneratorSpec& gen(std::size_t i) const { return gens_[i]; }
    const std::vector<GeneratorSpec>& gens() const { return gens_; }

    int index_of(const std::string& name) const
    {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name)
                return static_cast<int>(i);
        return -1;
    }

    Monomial one() const { return Monomial{std::vector<int>(gens_.size(), 0)}; }
    Monomial gen_monomial(std::size_t i, int e = 1) const
    {
        Monomial m = one();
        m.e[i] = e;
        return m;
    }

    TriDegree degree(const Monomial& m) const
    {
        TriDegree t{{0, 0}, 0, 0};
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            t.total = t.total + gens_[i].degree * m.e[i];
            t.s += gens_[i].s * m.e[i];
            t.f += gens_[i].f * m.e[i];
        }
        return t;
    }

    bool admissible(const Monomial& m) const
    {
        if (m.e.size() != gens_.size())
            return false;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            int e = m.e[i];
            switch (gens_[i].kind) {
            case GenKind::invertible: break;
            case GenKind::polynomial: if (e < 0) return false; break;
            case GenKind::exterior: if (e < 0 || e > 1) return false; break;
            case GenKind::truncated: if (e < 0 || e >= gens_[i].bound) return false; break;
            }
        }
        return true;
    }

    std::string label(const Monomial& m) const
    {
        std::string out;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (m.e[i] == 0)
                continue;
            if (!out.empty())
                out += "*";
            out += gens_[i].name;
            if (m.e[i] != 1)
                out += "^" + std::to_string(m.e[i]);
        }
        return out.empty() ? "1" : out;
    }

    // Product of monomials: (coefficient, monomial); coefficient 0 if the product vanishes.
    std::pair<std::uint32_t, Monomial> mul(const Monomial& x, const Monomial& y) const
    {
        std::size_t k = gens_.size();
        Monomial out{std::vector<int>(k)};
        for (std::size_t i = 0; i < k; ++i) {
            int e = x.e[i] + y.e[i];
            if (gens_[i].kind == GenKind::exterior && e > 1)
                return {0, one()};
            if (gens_[i].kind == GenKind::truncated && e >= gens_[i].bound)
                return {0, one()};
            out.e[i] = e;
        }
        // moving each factor of y left past the later factors of x
        long flips = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (!(y.e[j] & 1))
                continue;
            for (std::size_t i = j + 1; i < k; ++i)
                if ((x.e[i] & 1) && sign_[i * k + j])
                    ++flips;
        }
        return {flips & 1 ? F_.p() - 1 : 1u, std::move(out)};
    }

    bool finite_type() const { return finite_; }
    const std::string& finiteness_note() const { return note_; }

    // All admissible monomials of the given degree, in lex order of exponent vectors.
    // The search is bounded by a degree-growth certificate computed from the generator
    // degrees; if no certificate exists or a derived bound exceeds cap, this throws.
    std::vector<Monomial> monomials_in_degree(const TriDegree& d, long cap = kDefaultCap) const
    {
        if (!finite_)
            throw window_error("cannot enumerate monomials: " + note_);
        const std::size_t k = gens_.size();
        DegVec D = degvec(d);
        std::vector<long> lo(k, 0), hi(k, 0);
        std::vector<char> known(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            if (gens_[i].kind == GenKind::exterior) hi[i] = 1, known[i] = 1;
            if (gens_[i].kind == GenKind::truncated) hi[i] = gens_[i].bound - 1, known[i] = 1;
            if (gens_[i].kind == GenKind::invertible) known[i] = 1;
        }
        for (auto& L : layers_) {
            long base = dot(L.w, D);
            for (std::size_t i = 0; i < k; ++i) {
                if (!known[i] || gens_[i].kind == GenKind::invertible)
                    continue;
                long c = dot(L.w, degvec(gens_[i].tri()));
                base -= std::min(lo[i] * c, hi[i] * c);
            }
            for (auto g : L.gens) {
                long c = dot(L.w, degvec(gens_[g].tri()));
                long b = base < 0 ? -1 : base / c;
                if (b < 0)
                    return {};
                if (b > cap)
                    throw window_error("monomial enumeration: exponent bound " + std::to_string(b) + " of '" +
                                       gens_[g].name + "' exceeds cap " + std::to_string(cap));
                hi[g] = b;
            }
            for (auto g : L.gens)
                known[g] = 1;
        }
        std::vector<Monomial> out;
        Monomial cur = one();
        enumerate_rec(0, D, lo, hi, cur, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string to_text() const
    {
        std::ostringstream os;
        os << "prime " << F_.p() << "\n";
        for (auto& g : gens_) {
            os << g.name << " : " << format_degree(g.degree) << " : " << kind_name(g.kind);
            if (g.kind == GenKind::truncated)
                os << "^" << g.bound;
            if (g.s || g.f)
                os << " : s=" << g.s << " f=" << g.f;
            os << "\n";
        }
        return os.str();
    }

    static GradedAlgebraPresentation from_text(const std::string& text)
    {
        std::istringstream is(text);
        std::string line;
        std::uint32_t p = 0;
        std::vector<GeneratorSpec> gens;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        while (std::getline(is, line)) {
            if (auto h = line.find('#'); h != std::string::npos)
                line = line.substr(0, h);
            line = trim(line);
            if (line.empty())
                continue;
            if (line.rfind("prime", 0) == 0) {
                p = static_cast<std::uint32_t>(std::stoul(line.substr(5)));
                continue;
            }
            std::vector<std::string> parts;
            std::size_t pos = 0;
            while (true) {
                auto c = line.find(':', pos);
                parts.push_back(trim(line.substr(pos, c == std::string::npos ? std::string::npos : c - pos)));
                if (c == std::string::npos)
                    break;
                pos = c + 1;
            }
            if (parts.size() < 3 || parts.size() > 4)
                throw config_error("bad presentation line '" + line + "'");
            GeneratorSpec g;
            g.name = parts[0];
            g.degree = parse_degree(parts[1]);
            std::string kind = parts[2];
            if (kind == "poly") g.kind = GenKind::polynomial;
            else if (kind == "inv") g.kind = GenKind::invertible;
            else if (kind == "ext") g.kind = GenKind::exterior;
            else if (kind.rfind("trunc^", 0) == 0) {
                g.kind = GenKind::truncated;
                g.bound = std::stoi(kind.substr(6));
            } else
                throw config_error("unknown generator kind '" + kind + "'");
            if (parts.size() == 4) {
                std::istringstream fs(parts[3]);
                std::string tok;
                while (fs >> tok) {
                    if (tok.rfind("s=", 0) == 0) g.s = std::stoi(tok.substr(2));
                    else if (tok.rfind("f=", 0) == 0) g.f = std::stoi(tok.substr(2));
                    else throw config_error("bad generator annotation '" + tok + "'");
                }
            }
            gens.push_back(g);
        }
        if (p == 0)
            throw config_error("presentation text lacks a 'prime' line");
        return GradedAlgebraPresentation(p, std::move(gens));
    }

    bool operator==(const GradedAlgebraPresentation& o) const { return F_.p() == o.F_.p() && gens_ == o.gens_; }

private:
    struct Layer {
        DegVec w;
        std::vector<std::size_t> gens;
    };

    void build_certificate()
    {
        const std::size_t k = gens_.size();
        std::vector<DegVec> inv;
        for (auto& g : gens_)
            if (g.kind == GenKind::invertible)
                inv.push_back(degvec(g.tri()));
        if (!independent(inv)) {
            finite_ = false;
            note_ = "degrees of invertible generators are linearly dependent";
            return;
        }
        setup_inverse_solver(inv);
        std::vector<std::size_t> open;
        long K = 2;
        for (auto& g : gens_) {
            if (g.kind == GenKind::polynomial)
                open.push_back(&g - gens_.data());
            K = std::max<long>({K, std::abs(g.degree.m) + 1, std::abs(g.degree.n) + 1});
        }
        while (!open.empty()) {
            DegVec best{};
            std::size_t best_count = 0;
            long best_norm = 0;
            for (long a = -K; a <= K; ++a)
                for (long b = -K; b <= K; ++b)
                    for (long c = -1; c <= 1; ++c)
                        for (long e = -1; e <= 1; ++e) {
                            DegVec w{a, b, c, e};
                            bool ok = true;
                            for (auto& h : inv)
                                if (dot(w, h) != 0) { ok = false; break; }
                            if (!ok)
                                continue;
                            std::size_t cnt = 0;
                            for (auto g : open) {
                                long v = dot(w, degvec(gens_[g].tri()));
                                if (v < 0) { ok = false; break; }
                                if (v > 0) ++cnt;
                            }
                            long norm = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(e);
                            if (ok && cnt > 0 && (cnt > best_count || (cnt == best_count && norm < best_norm))) {
                                best = w, best_count = cnt, best_norm = norm;
                            }
                        }
            if (best_count == 0) {
                finite_ = false;
                note_ = "no degree-growth bound for generator '" + gens_[open.front()].name + "'";
                return;
            }
            Layer L{best, {}};
            std::vector<std::size_t> rest;
            for (auto g : open)
                (dot(best, degvec(gens_[g].tri())) > 0 ? L.gens : rest).push_back(g);
            layers_.push_back(L);
            open = rest;
        }
        (void)k;
    }

    static bool independent(std::vector<DegVec> v)
    {
        // fraction-free elimination on small integer rows
        std::size_t r = 0;
        for (std::size_t c = 0; c < 4 && r < v.size(); ++c) {
            std::size_t piv = r;
            while (piv < v.size() && v[piv][c] == 0)
                ++piv;
            if (piv == v.size())
                continue;
            std::swap(v[r], v[piv]);
            for (std::size_t i = r + 1; i < v.size(); ++i) {
                long a = v[r][c], b = v[i][c];
                for (std::size_t t = 0; t < 4; ++t)
                    v[i][t] = v[i][t] * a - v[r][t] * b;
            }
            ++r;
        }
        return r == v.size();
    }

    // Exponents of the invertible generators, plus one polynomial generator when its degree is
    // independent of theirs, are solved from the remaining degree by Cramer's rule on a
    // nonsingular minor; the other coordinates are verified.
    void setup_inverse_solver(const std::vector<DegVec>& inv)
    {
        if (inv.size() > 2)
            throw config_error("at most two invertible generators are supported");
        sol_idx_.clear();
        sol_vecs_ = inv;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].kind == GenKind::invertible)
                sol_idx_.push_back(i);
        leaf_ = -1;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].kind != GenKind::polynomial)
                continue;
            auto v = sol_vecs_;
            v.push_back(degvec(gens_[i].tri()));
            if (independent(v)) {
                leaf_ = static_cast<int>(i);
                sol_idx_.push_back(i);
                sol_vecs_ = v;
                break;
            }
        }
        const std::size_t k = sol_vecs_.size();
        if (k == 0)
            return;
        std::array<std::size_t, 3> c{};
        auto pick = [&](auto&& self, std::size_t pos, std::size_t from) -> bool {
            if (pos == k)
                return det_minor(sol_vecs_, c, k) != 0;
            for (std::size_t t = from; t < 4; ++t) {
                c[pos] = t;
                if (self(self, pos + 1, t + 1))
                    return true;
            }
            return false;
        };
        if (!pick(pick, 0, 0))
            throw consistency_error("no nonsingular minor for solved generators");
        minor_ = c;
    }

    static long det_minor(const std::vector<DegVec>& v, const std::array<std::size_t, 3>& c, std::size_t k)
    {
        auto at = [&](std::size_t i, std::size_t j) { return v[i][c[j]]; };
        if (k == 1)
            return at(0, 0);
        if (k == 2)
            return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
               at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
               at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    }

    bool solve_inverse(const DegVec& rem, Monomial& cur, const std::vector<long>& hi) const
    {
        const std::size_t k = sol_vecs_.size();
        if (k == 0)
            return rem == DegVec{0, 0, 0, 0};
        long det = det_minor(sol_vecs_, minor_, k);
        std::vector<long> x(k);
        for (std::size_t i = 0; i < k; ++i) {
            auto v = sol_vecs_;
            for (std::size_t j = 0; j < 4; ++j)
                v[i][j] = rem[j];
            long num = det_minor(v, minor_, k);
            if (num % det)
                return false;
            x[i] = num / det;
        }
        for (std::size_t t = 0; t < 4; ++t) {
            long acc = 0;
            for (std::size_t i = 0; i < k; ++i)
                acc += x[i] * sol_vecs_[i][t];
            if (acc != rem[t])
                return false;
        }
        if (leaf_ >= 0 && (x.back() < 0 || x.back() > hi[leaf_]))
            return false;
        for (std::size_t i = 0; i < k; ++i)
            cur.e[sol_idx_[i]] = static_cast<int>(x[i]);
        return true;
    }

    void enumerate_rec(std::size_t i, const DegVec& rem, const std::vector<long>& lo, const std::vector<long>& hi,
                       Monomial& cur, std::vector<Monomial>& out) const
    {
        if (i == gens_.size()) {
            Monomial m = cur;
            if (solve_inverse(rem, m, hi))
                out.push_back(std::move(m));
            return;
        }
        if (gens_[i].kind == GenKind::invertible || static_cast<int>(i) == leaf_) {
            enumerate_rec(i + 1, rem, lo, hi, cur, out);
            return;
        }
        // prune with each layer functional against the remaining generators' ranges
        for (auto& L : layers_) {
            long need = dot(L.w, rem), mn = 0, mx = 0;
            for (std::size_t j = 0; j < gens_.size(); ++j) {
                if (gens_[j].kind == GenKind::invertible || (j < i && static_cast<int>(j) != leaf_))
                    continue;
                long c = dot(L.w, degvec(gens_[j].tri()));
                mn += std::min(lo[j] * c, hi[j] * c);
                mx += std::max(lo[j] * c, hi[j] * c);
            }
            if (need < mn || need > mx)
                return;
        }
        DegVec g = degvec(gens_[i].tri());
        for (long e = lo[i]; e <= hi[i]; ++e) {
            cur.e[i] = static_cast<int>(e);
            DegVec r{rem[0] - e * g[0], rem[1] - e * g[1], rem[2] - e * g[2], rem[3] - e * g[3]};
            enumerate_rec(i + 1, r, lo, hi, cur, out);
        }
        cur.e[i] = 0;
    }

    PrimeField F_;
    std::vector<GeneratorSpec> gens_;
    std::vector<char> sign_;
    std::vector<Layer> layers_;
    bool finite_ = true;
    std::string note_;
    std::vector<std::size_t> sol_idx_;
    std::vector<DegVec> sol_vecs_;
    std::array<std::size_t, 3> minor_{0, 0, 0};
    int leaf_ = -1;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebraPresentation>;

inline AlgebraPtr make_algebra(std::uint32_t p, std::vector<GeneratorSpec> gens)
{
    return std::make_shared<const GradedAlgebraPresentation>(p, std::move(gens));
}

// Homogeneous element of a presented algebra.
class AlgebraElement {
public:
    AlgebraElement() = default;

    static AlgebraElement zero(AlgebraPtr A, TriDegree d)
    {
        AlgebraElement x;
        x.A_ = std::move(A);
        x.deg_ = d;
        return x;
    }
    static AlgebraElement monomial(AlgebraPtr A, const Monomial& m, std::int64_t c = 1)
    {
        if (!A->admissible(m))
            return zero(A, A->degree(m));
        AlgebraElement x = zero(A, A->degree(m));
        if (auto v = A->field().reduce(c))
            x.terms_[m] = v;
        return x;
    }
    static AlgebraElement one(AlgebraPtr A) { return monomial(A, A->one()); }
    static AlgebraElement constant(AlgebraPtr A, std::int64_t c) { return monomial(A, A->one(), c); }
    static AlgebraElement generator(AlgebraPtr A, const std::string& name, int e = 1)
    {
        int i = A->index_of(name);
        if (i < 0)
            throw config_error("unknown generator '" + name + "'");
        return monomial(A, A->gen_monomial(i, e));
    }
    // Degree is read off the terms; mixed degrees are a homogeneity failure.
    static AlgebraElement from_terms(AlgebraPtr A, const std::vector<std::pair<Monomial, std::int64_t>>& ts,
                                     const std::string& what = "element")
    {
        if (ts.empty())
            throw consistency_error(what + ": cannot infer degree of an empty term list");
        AlgebraElement x = zero(A, A->degree(ts.front().first));
        for (auto& [m, c] : ts) {
            if (A->degree(m) != x.deg_)
                throw consistency_error("homogeneity failure in " + what + ": term " + A->label(m) + " has degree " +
                                        format_tri(A->degree(m)) + ", expected " + format_tri(x.deg_));
            x = x + monomial(A, m, c);
        }
        return x;
    }

    const AlgebraPtr& algebra() const { return A_; }
    const TriDegree& degree() const { return deg_; }
    const std::map<Monomial, std::uint32_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::uint32_t coeff(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    AlgebraElement operator+(const AlgebraElement& o) const
    {
        check_same(o);
        if (o.is_zero())
            return *this;
        if (is_zero())
            return o;
        if (deg_ != o.deg_)
            throw consistency_error("homogeneity failure: adding degrees " + format_tri(deg_) + " and " +
                                    format_tri(o.deg_));
        AlgebraElement r = *this;
        const auto& F = A_->field();
        for (auto& [m, c] : o.terms_) {
            auto& v = r.terms_[m];
            v = F.add(v, c);
            if (!v)
                r.terms_.erase(m);
        }
        return r;
    }
    AlgebraElement operator-() const { return scale(A_->p() - 1); }
    AlgebraElement operator-(const AlgebraElement& o) const { return *this + (-o); }

    AlgebraElement scale(std::uint32_t c) const
    {
        AlgebraElement r = zero(A_, deg_);
        c %= A_->p();
        if (!c)
            return r;
        for (auto& [m, v] : terms_)
            r.terms_[m] = A_->field().mul(v, c);
        return r;
    }

    AlgebraElement operator*(const AlgebraElement& o) const
    {
        check_same(o);
        TriDegree d{deg_.total + o.deg_.total, deg_.s + o.deg_.s, deg_.f + o.deg_.f};
        AlgebraElement r = zero(A_, d);
        const auto& F = A_->field();
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) {
                auto [sg, m] = A_->mul(m1, m2);
                if (!sg)
                    continue;
                auto& v = r.terms_[m];
                v = F.add(v, F.mul(sg, F.mul(c1, c2)));
                if (!v)
                    r.terms_.erase(m);
            }
        return r;
    }

    AlgebraElement pow(int e) const
    {
        if (e < 0)
            throw consistency_error("negative power of a general element");
        AlgebraElement r = one(A_), b = *this;
        while (e) {
            if (e & 1)
                r = r * b;
            e >>= 1;
            if (e)
                b = b * b;
        }
        return r;
    }

    bool operator==(const AlgebraElement& o) const
    {
        if (is_zero() && o.is_zero())
            return true;
        return deg_ == o.deg_ && terms_ == o.terms_;
    }

    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::string s;
        for (auto& [m, c] : terms_) {
            if (!s.empty())
                s += " + ";
            if (c != 1)
                s += std::to_string(c) + "*";
            s += A_->label(m);
        }
        return s;
    }

private:
    void check_same(const AlgebraElement& o) const
    {
        if (A_.get() != o.A_.get() && !(*A_ == *o.A_))
            throw consistency_error("mixing elements of different algebras");
    }

    AlgebraPtr A_;
    TriDegree deg_;
    std::map<Monomial, std::uint32_t> terms_;
};

// Ring map determined by generator images. Negative powers of invertible generators
// use the inverse of the image, computed as a terminating geometric series when the
// image is a unit monomial plus a nilpotent tail.
class AlgebraMap {
public:
    AlgebraMap() = default;
    AlgebraMap(AlgebraPtr src, AlgebraPtr tgt, std::vector<AlgebraElement> images, std::string name = "map")
        : src_(std::move(src)), tgt_(std::move(tgt)), images_(std::move(images)), name_(std::move(name))
    {
        if (images_.size() != src_->size())
            throw config_error(name_ + ": expected " + std::to_string(src_->size()) + " generator images");
        inverses_.resize(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) {
            auto& g = src_->gen(i);
            auto& x = images_[i];
            if (x.algebra().get() != tgt_.get() && !(*x.algebra() == *tgt_))
                throw config_error(name_ + ": image of '" + g.name + "' lives in the wrong algebra");
            if (x.degree() != g.tri())
                throw consistency_error("homogeneity failure in " + name_ + ": image of '" + g.name + "' has degree " +
                                        format_tri(x.degree()) + ", expected " + format_tri(g.tri()));
            if (g.kind == GenKind::exterior && !(x * x).is_zero())
                throw consistency_error(name_ + ": image of exterior '" + g.name + "' does not square to zero");
            if (g.kind == GenKind::truncated && !x.pow(g.bound).is_zero())
                throw consistency_error(name_ + ": image of '" + g.name + "' violates its truncation");
            if (g.kind == GenKind::invertible)
                inverses_[i] = invert(x, g.name);
        }
    }

    const AlgebraPtr& source() const { return src_; }
    const AlgebraPtr& target() const { return tgt_; }
    const AlgebraElement& image(std::size_t i) const { return images_[i]; }
    const std::string& name() const { return name_; }

    AlgebraElement apply(const Monomial& m) const
    {
        TriDegree d = src_->degree(m);
        AlgebraElement r = AlgebraElement::one(tgt_);
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] > 0)
                r = r * images_[i].pow(m.e[i]);
            else if (m.e[i] < 0)
                r = r * inverses_[i].pow(-m.e[i]);
        }
        if (r.is_zero())
            return AlgebraElement::zero(tgt_, d);
        return r;
    }

    AlgebraElement apply(const AlgebraElement& x) const
    {
        AlgebraElement r = AlgebraElement::zero(tgt_, x.degree());
        for (auto& [m, c] : x.terms())
            r = r + apply(m).scale(c);
        return r;
    }

    // this after g
    AlgebraMap after(const AlgebraMap& g) const
    {
        std::vector<AlgebraElement> ims;
        for (std::size_t i = 0; i < g.src_->size(); ++i)
            ims.push_back(apply(g.images_[i]));
        return AlgebraMap(g.src_, tgt_, std::move(ims), name_ + " o " + g.name_);
    }

private:
    AlgebraElement invert(const AlgebraElement& x, const std::string& gname) const
    {
        const auto& T = *tgt_;
        const Monomial* unit = nullptr;
        for (auto& [m, c] : x.terms()) {
            bool is_unit = true;
            for (std::size_t j = 0; j < T.size(); ++j)
                if (m.e[j] != 0 && T.gen(j).kind != GenKind::invertible)
                    is_unit = false;
            if (is_unit) {
                if (unit)
                    throw consistency_error(name_ + ": image of '" + gname + "' has two unit terms");
                unit = &m;
            }
        }
        if (!unit)
            throw consistency_error(name_ + ": image of invertible '" + gname + "' is not a unit");
        Monomial uinv = *unit;
        for (auto& e : uinv.e)
            e = -e;
        auto u = AlgebraElement::monomial(tgt_, *unit, x.coeff(*unit));
        auto [sg, prod] = T.mul(*unit, uinv);
        // u^{-1} = c^{-1} * sg * uinv since unit * uinv = sg * 1
        auto ui = AlgebraElement::monomial(tgt_, uinv, T.field().mul(T.field().inv(x.coeff(*unit)), sg));
        AlgebraElement nil = x - u;
        AlgebraElement t = -(ui * nil);  // x^{-1} = ui * sum_k t^k
        AlgebraElement acc = AlgebraElement::one(tgt_), term = AlgebraElement::one(tgt_);
        for (int k = 1; k <= 4096; ++k) {
            term = term * t;
            if (term.is_zero())
                return ui * acc;
            acc = acc + term;
        }
        throw consistency_error(name_ + ": tail of image of '" + gname + "' is not nilpotent");
    }

    AlgebraPtr src_, tgt_;
    std::vector<AlgebraElement> images_;
    std::vector<AlgebraElement> inverses_;
    std::string name_;
};

}  // namespace spokess
