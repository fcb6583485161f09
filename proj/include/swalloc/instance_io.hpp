#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "swalloc/instance.hpp"
#include "swalloc/matroid.hpp"

namespace swalloc {

/// Everything an instance file can hold: bidders over m items and, for
/// constrained maximisation, an optional matroid over the same items.
struct ProblemInstance {
  std::string id;
  WelfareInstance welfare;
  MatroidPtr matroid;  // null when the file has no matroid block
};

/// Parses the `swinstance 1` text format. Tables are validated (non-negative,
/// submodular); errors carry the offending line number.
ProblemInstance parse_instance(std::istream& in, std::string id = "instance");
ProblemInstance parse_instance_string(const std::string& text, std::string id = "instance");
ProblemInstance load_instance(const std::filesystem::path& path);

/// Reads a file that holds only a matroid block over `ground_size` elements.
MatroidPtr load_matroid(const std::filesystem::path& path, std::size_t ground_size);

/// Writes the instance back in the same format. Functions without a native
/// encoding are tabulated.
void write_instance(std::ostream& out, const ProblemInstance& instance);
std::string to_text(const ProblemInstance& instance);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

/// *.inst files in a directory (sorted), or the single file given.
std::vector<std::filesystem::path> instance_files(const std::filesystem::path& path);

}  // namespace swalloc
