// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>

namespace datamarket::cli {

/// Entry point of the `datamarket` tool. Subcommands: fit, metric, auction,
/// optimize, simulate, sweep. Returns 0 on success, 1 on usage, input or
/// configuration errors, 2 on internal errors.
int cli_main(int argc, char const *const *argv, std::ostream &out, std::ostream &err);

}  // namespace datamarket::cli
