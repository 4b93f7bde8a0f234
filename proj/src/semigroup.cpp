#include "telsig/semigroup.hpp"

#include <algorithm>
#include <numeric>

namespace telsig {

namespace {

std::vector<long> gcd_chain_of(const std::vector<long>& a) {
    std::vector<long> d(a.size());
    long g = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        g = std::gcd(g, a[i]);
        d[i] = g;
    }
    return d;
}

// Box normal form over an arbitrary coprime subsequence (used recursively on
// scaled prefixes).  Peels the last generator: k_m is the unique residue mod
// d_{m-1} solving a_m k_m = n, then recurses on (n - a_m k_m)/d_{m-1} over
// the prefix scaled by d_{m-1}.  Correct when the sequence is telescopic.
std::optional<std::vector<long>> represent_rec(const std::vector<long>& a,
                                               const std::vector<long>& d, long n) {
    const size_t m = a.size();
    if (n < 0) return std::nullopt;
    if (m == 1) {
        if (n % a[0] != 0) return std::nullopt;
        return std::vector<long>{n / a[0]};
    }
    const long mod = d[m - 2];  // d_{m-1} in 1-based terms
    // gcd(a_m, mod) = d_m = 1 at every level of the scaled recursion.
    long am = ((a[m - 1] % mod) + mod) % mod;
    long km = -1;
    for (long k = 0; k < mod; ++k) {
        if ((am * k) % mod == n % mod) {
            km = k;
            break;
        }
    }
    if (km < 0) return std::nullopt;
    long rest = n - a[m - 1] * km;
    if (rest < 0) return std::nullopt;
    // rest is divisible by mod since a_m km == n (mod d_{m-1}).
    std::vector<long> pref(a.begin(), a.end() - 1);
    std::vector<long> pd(d.begin(), d.end() - 1);
    for (auto& v : pref) v /= mod;
    for (auto& v : pd) v /= mod;
    auto sub = represent_rec(pref, pd, rest / mod);
    if (!sub) return std::nullopt;
    sub->push_back(km);
    return sub;
}

bool member(const std::vector<long>& a, long n) {
    return represent_rec(a, gcd_chain_of(a), n).has_value();
}

long brauer_bound_of(const std::vector<long>& a, const std::vector<long>& d) {
    long b = -a[0];
    for (size_t i = 1; i < a.size(); ++i) b += a[i] * (d[i - 1] / d[i] - 1);
    return b;
}

} // namespace

void validate_generators(const std::vector<long>& a) {
    if (a.size() < 2) fail(errc::input, "need at least two generators");
    for (long v : a) {
        if (v <= 0) fail(errc::input, "generators must be positive");
        if (v == 1) fail(errc::input, "generator 1 gives genus 0; rejected");
    }
    std::vector<long> d = gcd_chain_of(a);
    if (d.back() != 1) fail(errc::not_coprime, "not coprime");
}

bool is_telescopic(const std::vector<long>& a) {
    validate_generators(a);
    std::vector<long> d = gcd_chain_of(a);
    for (size_t i = 1; i < a.size(); ++i) {
        // Scaled prefix (a_1/d_{i-1}, ..., a_{i-1}/d_{i-1}); its own gcd is 1
        // and it is telescopic by the previous iterations, so membership can
        // use the box recursion.
        std::vector<long> pref(a.begin(), a.begin() + static_cast<long>(i));
        for (auto& v : pref) v /= d[i - 1];
        long target = a[i] / d[i];
        bool in;
        if (pref.size() == 1)
            in = (target % pref[0] == 0);
        else
            in = member(pref, target);
        if (!in) return false;
    }
    return true;
}

FrobeniusInfo frobenius_info(const std::vector<long>& a) {
    validate_generators(a);
    std::vector<long> d = gcd_chain_of(a);
    FrobeniusInfo info;
    info.brauer_bound = brauer_bound_of(a, d);
    // Sieve up to the bound; it is valid for every coprime sequence.
    long limit = std::max<long>(info.brauer_bound, 0);
    std::vector<char> hit(static_cast<size_t>(limit) + 1, 0);
    hit[0] = 1;
    for (long n = 1; n <= limit; ++n)
        for (long g : a)
            if (n >= g && hit[static_cast<size_t>(n - g)]) {
                hit[static_cast<size_t>(n)] = 1;
                break;
            }
    long frob = -1;
    for (long n = limit; n >= 1; --n)
        if (!hit[static_cast<size_t>(n)]) {
            frob = n;
            break;
        }
    info.frobenius = frob;
    info.equality = (frob == info.brauer_bound);
    return info;
}

SemigroupData SemigroupData::analyze(std::vector<long> a) {
    if (!is_telescopic(a)) fail(errc::not_telescopic, "not telescopic");
    SemigroupData s;
    s.a_ = std::move(a);
    s.d_ = gcd_chain_of(s.a_);
    s.frob_ = frobenius_info(s.a_);

    for (long n = 1; n <= s.frob_.brauer_bound; ++n)
        if (!s.represent(n)) s.gaps_.push_back(n);

    // Genus by the closed form; must match the gap count.
    long twice = 1 - std::accumulate(s.a_.begin(), s.a_.end(), 0L);
    for (size_t i = 1; i < s.a_.size(); ++i) twice += s.a_[i] * (s.d_[i - 1] / s.d_[i]);
    if (twice % 2 != 0) fail(errc::internal, "genus formula not integral");
    s.genus_ = twice / 2;
    if (s.genus_ != static_cast<long>(s.gaps_.size()))
        fail(errc::internal, "genus formula disagrees with gap count");
    if (s.genus_ >= 1 && s.gaps_.back() != 2 * s.genus_ - 1)
        fail(errc::internal, "largest gap is not 2g-1");

    // lambda_i = w_{g+1-i} - g + i.
    const long g = s.genus_;
    for (long i = 1; i <= g; ++i) {
        long part = s.gaps_[static_cast<size_t>(g - i)] - g + i;
        if (part <= 0) fail(errc::internal, "partition part not positive");
        if (!s.partition_.parts.empty() && s.partition_.parts.back() < part)
            fail(errc::internal, "partition not weakly decreasing");
        s.partition_.parts.push_back(part);
    }
    return s;
}

std::optional<std::vector<long>> SemigroupData::represent(long n) const {
    if (n < 0) return std::nullopt;
    return represent_rec(a_, d_, n);
}

std::vector<long> SemigroupData::nongaps(size_t count) const {
    std::vector<long> out;
    for (long n = 0; out.size() < count; ++n)
        if (contains(n)) out.push_back(n);
    return out;
}

std::vector<std::vector<long>> SemigroupData::l_rows() const {
    std::vector<std::vector<long>> rows;
    for (size_t i = 1; i < a_.size(); ++i) {
        long target = a_[i] * (d_[i - 1] / d_[i]);
        auto rep = represent(target);
        if (!rep) fail(errc::internal, "leading weight not representable");
        for (size_t j = i; j < rep->size(); ++j)
            if ((*rep)[j] != 0) fail(errc::internal, "exponent row has entries at or past its own column");
        rows.push_back(*rep);
    }
    return rows;
}

} // namespace telsig
