#ifndef FLAB_ZEROSET_HPP
#define FLAB_ZEROSET_HPP

#include <iosfwd>
#include <vector>

#include "flab/types.hpp"

namespace flab {

struct Zero {
    Complex location;
    int multiplicity;
};

// Divisor of an analytic function on the cut plane: locations with
// multiplicities, sorted by (Re, Im). Locations on the cut (inside the
// guard band) are rejected at insertion.
class ZeroSet {
public:
    ZeroSet() = default;

    // Inserts a zero, merging with an existing entry closer than merge_tol.
    // Merged locations are the multiplicity-weighted mean.
    void add(Complex location, int multiplicity, double merge_tol = 0.0);

    const std::vector<Zero>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    int total_multiplicity() const noexcept;

    // CSV with header "re,im,multiplicity", doubles at 17 significant digits.
    void to_csv(std::ostream& os) const;
    static ZeroSet from_csv(std::istream& is);

private:
    std::vector<Zero> entries_;
};

} // namespace flab

#endif
