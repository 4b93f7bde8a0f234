#ifndef TELSIG_SEMIGROUP_HPP
#define TELSIG_SEMIGROUP_HPP

#include <optional>
#include <string>
#include <vector>

#include "telsig/error.hpp"

namespace telsig {

struct Partition {
    std::vector<long> parts;  // weakly decreasing, positive

    long size() const { return static_cast<long>(parts.size()); }
    long sum() const {
        long s = 0;
        for (long p : parts) s += p;
        return s;
    }
    bool operator==(const Partition&) const = default;
};

struct FrobeniusInfo {
    long frobenius = 0;
    long brauer_bound = 0;
    bool equality = false;  // holds iff the sequence is telescopic
};

// Validates arity/positivity/coprimality shared by every entry point.
// Sequences of length < 2 or containing 1 are rejected (genus 0).
void validate_generators(const std::vector<long>& a);

// Telescopic condition: a_i/d_i lies in the semigroup generated by the
// previous generators scaled by d_{i-1}, for every i >= 2.
bool is_telescopic(const std::vector<long>& a);

// Frobenius number by sieve (any coprime sequence), the gcd-chain upper
// bound, and whether they coincide.
FrobeniusInfo frobenius_info(const std::vector<long>& a);

// A telescopic sequence with its derived combinatorics.  Construction
// rejects non-telescopic input.
class SemigroupData {
public:
    SemigroupData() = default;  // empty placeholder; analyze() is the entry point
    static SemigroupData analyze(std::vector<long> a);

    const std::vector<long>& generators() const { return a_; }
    const std::vector<long>& gcd_chain() const { return d_; }
    size_t arity() const { return a_.size(); }
    const std::vector<long>& gaps() const { return gaps_; }
    long genus() const { return genus_; }
    const Partition& partition() const { return partition_; }
    long frobenius() const { return frob_.frobenius; }
    long brauer_bound() const { return frob_.brauer_bound; }

    // Unique box normal form (k_1,...,k_m) with sum a_i k_i = n and
    // 0 <= k_i < d_{i-1}/d_i for i >= 2; nullopt when n is a gap.
    std::optional<std::vector<long>> represent(long n) const;

    bool contains(long n) const { return represent(n).has_value(); }

    // First `count` semigroup elements in increasing order (starts at 0).
    std::vector<long> nongaps(size_t count) const;

    // Exponent rows of the leading binomials: row i-2 represents
    // a_i d_{i-1}/d_i, with zeros from column i on.
    std::vector<std::vector<long>> l_rows() const;

private:
    std::vector<long> a_;
    std::vector<long> d_;
    std::vector<long> gaps_;
    long genus_ = 0;
    Partition partition_;
    FrobeniusInfo frob_;
};

} // namespace telsig

#endif
