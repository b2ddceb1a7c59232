#pragma once

#include <filesystem>
#include <string>

#include "mixtime/chain.hpp"

namespace mixtime {

// Kernel file format, consumed repo-wide:
//   {"d": <int>, "rows": [[...], ...]}
// with row-major probabilities. Parsing enforces the MarkovKernel invariants
// and rejects files whose "d" disagrees with the row count.

MarkovKernel parse_kernel_json(const std::string& text);
std::string kernel_to_json_text(const MarkovKernel& kernel);

MarkovKernel load_kernel(const std::filesystem::path& path);
void save_kernel(const MarkovKernel& kernel, const std::filesystem::path& path);

}  // namespace mixtime
