#pragma once

#include "sqgt/types.hpp"

namespace sqgt {

/// Coordinate-wise floor((x_1 + ... + x_s) / step) of s >= 1 equal-length
/// q-ary vectors. Equals the syndrome under the equidistant quantizer with
/// the same step.
Syndrome sq_sum(const std::vector<std::vector<int>>& codewords, long long step);

/// Syndrome of a subject set: per test, quantize the pooled sum of the
/// selected columns. The empty set yields the all-zero syndrome. Total for
/// any quantizer; operations that carry a defect bound check the
/// quantizer/design composition themselves.
Syndrome syndrome(const CodeMatrix& code, const PositiveSet& set, const Quantizer& quantizer);

/// Syndrome of a single column.
Syndrome column_syndrome(const CodeMatrix& code, int col_index_1based, const Quantizer& quantizer);

/// True iff ya <= yb coordinate-wise. Inclusion is a partial order on
/// syndromes of equal length.
bool is_included(const Syndrome& ya, const Syndrome& yb);

}  // namespace sqgt
