#pragma once

#include <functional>
#include <span>

#include "symlra/decomposition.hpp"

namespace symlra {

/// Tensor with F_{i1..im} = fn(i1, ..., im) for 1-based indices. fn must be
/// symmetric; it is evaluated once per compact entry on a sorted tuple.
SymTensor tensor_from_indices(int n, int order, const std::function<Complex(std::span<const int>)>& fn);

/// F_{i1..im} = sin(i1 + ... + im)
SymTensor sin_tensor(int n, int order = 3);
/// F_{i1..im} = sqrt(i1 + ... + im)
SymTensor rootsum_tensor(int n, int order = 4);
/// F_{i1..im} = i1 + ... + im (border rank 2, rank 3 for m = 3)
SymTensor linear_tensor(int n, int order = 3);

/// Rank-4 cubic in three variables with compact entries
/// -8, 2, 15, -7, 17, 7, 17, 4, 3, 18.
SymTensor small_cubic_tensor();

/// Eight integer vectors in C^4 whose fourth powers sum to a rank-8 quartic.
Decomposition waring8_decomposition();
SymTensor waring8_tensor();

}  // namespace symlra
