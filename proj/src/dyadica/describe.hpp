#pragma once

#include <cstdint>
#include <string>

namespace dyadica {

// Human-readable breakdown of one report row: the instance's weight
// characteristics, each constant with the quantity it measures, and the
// comparison ratios. Instances are regenerated from the seed recorded in the
// row, so witnesses and characteristics are recomputed exactly.
std::string describe_row(const std::string& report_path, std::int64_t row_id);

}  // namespace dyadica
