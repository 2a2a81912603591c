// multiindex.hpp — strictly increasing multi-indices as bitmasks.
//
// A degree-k coefficient slot corresponds to a dim-bit mask with k set bits;
// masks of equal popcount are enumerated in increasing numeric order, which
// matches lexicographic order on the index tuples.
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "plb/core.hpp"

namespace plb {

using Mask = uint32_t;

// Table of increasing multi-indices for one (dim, degree) pair.
class IndexTable {
public:
    IndexTable() = default;
    IndexTable(int dim, int degree) : dim_(dim), degree_(degree) {
        if (degree < 0 || degree > dim) throw DegreeError("degree outside [0, dim]");
        pos_.assign(size_t(1) << dim, -1);
        for (Mask m = 0; m < (Mask(1) << dim); ++m) {
            if (std::popcount(m) == degree) {
                pos_[m] = static_cast<int>(masks_.size());
                masks_.push_back(m);
            }
        }
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(masks_.size()); }
    Mask mask(int i) const { return masks_[i]; }
    int position(Mask m) const { return pos_[m]; }

    std::vector<int> axes(int i) const {
        std::vector<int> out;
        for (int a = 0; a < dim_; ++a)
            if (masks_[i] & (Mask(1) << a)) out.push_back(a);
        return out;
    }

private:
    int dim_ = 0;
    int degree_ = 0;
    std::vector<Mask> masks_;
    std::vector<int> pos_;
};

// Sign of sorting dx^A ^ dx^B into increasing order (A, B disjoint):
// parity of pairs (a in A, b in B) with a > b.
inline int wedge_sign(Mask a, Mask b) {
    int inversions = 0;
    Mask bb = b;
    while (bb) {
        int bit = std::countr_zero(bb);
        bb &= bb - 1;
        inversions += std::popcount(a >> (bit + 1));
    }
    return (inversions & 1) ? -1 : 1;
}

}  // namespace plb
