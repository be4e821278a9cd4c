#ifndef ZPT_SLOPE_SEQ_HPP
#define ZPT_SLOPE_SEQ_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace zpt {

// Sorted multiset of exact q-slopes in [0, 1] attached to a level n of a
// tower over Z_p. The rescaled view multiplies each slope by p^n.
class SlopeSeq {
   public:
    SlopeSeq() = default;
    SlopeSeq(std::uint64_t p, int level) : p_(p), level_(level) {}
    static SlopeSeq from_list(std::uint64_t p, int level, const std::vector<mpq_class>& slopes);

    std::uint64_t p() const { return p_; }
    int level() const { return level_; }
    const std::vector<std::pair<mpq_class, long>>& entries() const { return entries_; }

    void add(const mpq_class& slope, long multiplicity = 1);
    // Removes `multiplicity` copies; throws if fewer are present.
    void remove(const mpq_class& slope, long multiplicity = 1);

    bool empty() const { return entries_.empty(); }
    long total() const;  // count with multiplicity
    long multiplicity(const mpq_class& slope) const;
    mpq_class sum() const;
    std::vector<mpq_class> expanded() const;
    mpq_class scale() const;  // p^level
    // alpha <-> 1 - alpha.
    SlopeSeq reflected() const;
    SlopeSeq scaled_multiplicities(long factor) const;

    // Multiset equality; p and level are labels only.
    bool same_multiset(const SlopeSeq& rhs) const { return entries_ == rhs.entries_; }
    bool operator==(const SlopeSeq& rhs) const {
        return p_ == rhs.p_ && level_ == rhs.level_ && entries_ == rhs.entries_;
    }

    std::string to_string() const;

   private:
    std::uint64_t p_ = 0;
    int level_ = 0;
    std::vector<std::pair<mpq_class, long>> entries_;
};

std::string rational_string(const mpq_class& x);

}  // namespace zpt

#endif  // ZPT_SLOPE_SEQ_HPP
