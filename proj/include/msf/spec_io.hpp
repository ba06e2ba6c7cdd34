#pragma once
#include <functional>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "msf/monomial_op.hpp"

namespace msf {

// Rebuilds function-backed operators from their recorded constructor name and
// parameters. Data-backed operators (embedded / product / inverse) round-trip
// without any registry.
struct FnRegistry {
  using Builder = std::function<MonomialOp(const SiteSpace&, const nlohmann::json&)>;
  std::map<std::string, Builder> builders;
};

nlohmann::json phase_to_json(const Phase& p);
Phase phase_from_json(const nlohmann::json& j);

// Throws refused_error if the tree contains a function node without a named
// constructor: an opaque closure cannot be written to a file.
nlohmann::json op_to_json(const MonomialOp& op);
MonomialOp op_from_json(const nlohmann::json& j, const SiteSpace& space,
                        const FnRegistry* registry = nullptr);

struct GeneratorFile {
  GeneratorSet set;
  nlohmann::json metadata;  // free-form provenance; null when absent
};

nlohmann::json generator_file_to_json(const GeneratorSet& set,
                                      const nlohmann::json& metadata = nullptr);
GeneratorFile generator_file_from_json(const nlohmann::json& j,
                                       const FnRegistry* registry = nullptr);

GeneratorFile load_generator_file(const std::string& path,
                                  const FnRegistry* registry = nullptr);
void save_generator_file(const std::string& path, const GeneratorSet& set,
                         const nlohmann::json& metadata = nullptr);

// Sorted keys, no whitespace: equal structures serialize to equal bytes.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace msf
