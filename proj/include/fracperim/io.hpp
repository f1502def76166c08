#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

#include "fracperim/energy.hpp"
#include "fracperim/potential.hpp"
#include "fracperim/solver.hpp"

namespace fracperim {

using json = nlohmann::json;

/// Raised for unreadable or malformed inputs (maps to the CLI's input-error exit code).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Space from its JSON description; validates every invariant including the
/// triangle inequality for explicit matrices (first violated triple reported).
Space space_from_json(const json& j);
Space load_space(const std::string& path);
json space_to_json(const Space& space);
void save_space(const Space& space, const std::string& path);

/// "" -> empty; "all"; "1,4,7"; "@file" holding a JSON id array or a comma list.
SetMask parse_mask(const std::string& spec, std::size_t n);
/// "@file" holding a JSON array (null or "-inf" for -inf), or an inline comma list.
Field parse_field(const std::string& spec, std::size_t n);
/// Same, with a constant fallback "c" meaning c everywhere.
Field parse_field_or_constant(const std::string& spec, std::size_t n);

json mask_to_json(const SetMask& m);
json field_to_json(std::span<const double> u);
json to_json(const CutSolution& sol);
json to_json(const ScaleProfile& p);

/// FNV-1a over the space's distances, masses and s.
std::uint64_t kernel_key(const Space& space, double s);
/// Reuse a cached kernel when the key matches, otherwise assemble and store it.
/// An empty path disables caching.
Kernel cached_kernel(std::shared_ptr<const Space> space, double s, const std::string& path);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace fracperim
