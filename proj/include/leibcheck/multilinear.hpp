#pragma once

#include "leibcheck/element.hpp"
#include "leibcheck/signs.hpp"

#include <map>
#include <span>
#include <vector>

namespace leibcheck {

/// Sparse degree-homogeneous multilinear map from words over a source space
/// to a target space: the storage form of every Taylor coefficient.
///
/// A symmetric map stores entries on canonically sorted tuples only and
/// applies the Koszul normalization sign on lookup; a tensor map keys entries
/// by arbitrary tuples.  Every entry must satisfy
///   deg(output) = sum of input degrees + shift.
class MultilinearMap {
public:
    MultilinearMap(int arity, SpacePtr source, SpacePtr target, int shift, bool symmetric);

    int arity() const { return arity_; }
    int shift() const { return shift_; }
    bool symmetric() const { return symmetric_; }
    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    bool is_zero() const { return entries_.empty(); }
    const std::map<std::vector<int>, Element>& entries() const { return entries_; }

    /// Adds `value` to the entry at `inputs`.  Symmetric maps canonicalize the
    /// tuple first (the incoming value is assumed to be stated for the given
    /// order, so the normalization sign is applied).  Degree violations throw.
    void add_entry(std::vector<int> inputs, const Element& value);

    /// Value on a basis tuple, honouring symmetric normalization.
    Element apply_tuple(std::span<const int> inputs) const;

    /// Multilinear expansion over sparse arguments.
    Element apply(std::span<const Element> args) const;

    MultilinearMap operator+(const MultilinearMap& rhs) const;
    MultilinearMap operator-() const;
    MultilinearMap scale(const Scalar& value) const;
    MultilinearMap times(const Rational& value) const;
    MultilinearMap div_int(long divisor) const;
    bool operator==(const MultilinearMap& rhs) const;

private:
    int arity_;
    SpacePtr source_;
    SpacePtr target_;
    int shift_;
    bool symmetric_;
    std::map<std::vector<int>, Element> entries_;

    void check_entry_degree(const std::vector<int>& inputs, const Element& value) const;
};

} // namespace leibcheck
