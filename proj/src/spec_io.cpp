#include "msf/spec_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "msf/errors.hpp"

namespace msf {

using nlohmann::json;

json phase_to_json(const Phase& p) {
  if (p.exact()) return json{{"num", p.num()}, {"den", p.den()}};
  auto z = p.to_complex();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

Phase phase_from_json(const json& j) {
  if (!j.is_object()) throw input_error("io.phase", "phase must be an object");
  if (j.contains("num") && j.contains("den"))
    return Phase::root_of_unity(j.at("num").get<std::int64_t>(),
                                j.at("den").get<std::int64_t>());
  if (j.contains("re") && j.contains("im"))
    return Phase::from_complex({j.at("re").get<double>(), j.at("im").get<double>()});
  throw input_error("io.phase", "phase needs either num/den or re/im fields");
}

json op_to_json(const MonomialOp& op) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MonomialOp::Embedded>) {
          json phases = json::array();
          for (const auto& p : n.gate.phases) phases.push_back(phase_to_json(p));
          return json{{"kind", "embedded"},
                      {"sites", n.sites},
                      {"dims", n.gate.dims},
                      {"perm", n.gate.perm},
                      {"phases", std::move(phases)}};
        } else if constexpr (std::is_same_v<T, MonomialOp::Product>) {
          json factors = json::array();
          for (const auto& f : n.factors) factors.push_back(op_to_json(*f));
          return json{{"kind", "product"}, {"factors", std::move(factors)}};
        } else if constexpr (std::is_same_v<T, MonomialOp::Inverse>) {
          return json{{"kind", "inverse"}, {"op", op_to_json(*n.inner)}};
        } else {
          if (!n.spec)
            throw refused_error("io.serialize",
                                "operator contains an opaque function component (" + n.desc +
                                    "); only operators built from named constructors can be "
                                    "written to a file");
          return json{{"kind", "fn"},
                      {"ctor", n.spec->ctor},
                      {"params", json::parse(n.spec->params_json)}};
        }
      },
      op.node());
}

static MonomialOp op_from_json_inner(const json& j, const SiteSpace& space,
                                     const FnRegistry* registry) {
  if (!j.is_object() || !j.contains("kind"))
    throw input_error("io.op", "operator must be an object with a 'kind' field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "embedded") {
    std::vector<Phase> phases;
    for (const auto& pj : j.at("phases")) phases.push_back(phase_from_json(pj));
    LocalMonomialGate gate(j.at("dims").get<std::vector<std::uint32_t>>(),
                           j.at("perm").get<std::vector<std::uint32_t>>(), std::move(phases));
    return MonomialOp::embedded(std::move(gate),
                                j.at("sites").get<std::vector<std::uint32_t>>());
  }
  if (kind == "product") {
    std::vector<MonomialOp> factors;
    for (const auto& fj : j.at("factors"))
      factors.push_back(op_from_json_inner(fj, space, registry));
    return MonomialOp::product(std::move(factors));
  }
  if (kind == "inverse")
    return MonomialOp::inverse(op_from_json_inner(j.at("op"), space, registry));
  if (kind == "fn") {
    const std::string ctor = j.at("ctor").get<std::string>();
    if (registry) {
      auto it = registry->builders.find(ctor);
      if (it != registry->builders.end())
        return it->second(space, j.value("params", json::object()));
    }
    throw input_error("io.fn", "unknown function constructor '" + ctor + "'");
  }
  throw input_error("io.op", "unknown operator kind '" + kind + "'");
}

MonomialOp op_from_json(const json& j, const SiteSpace& space, const FnRegistry* registry) {
  try {
    MonomialOp op = op_from_json_inner(j, space, registry);
    validate_op(op, space);
    return op;
  } catch (const json::exception& e) {
    throw input_error("io.op", e.what());
  }
}

json generator_file_to_json(const GeneratorSet& set, const json& metadata) {
  json gens = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    json entry = op_to_json(set.op(i));
    entry["name"] = set.name(i);
    gens.push_back(std::move(entry));
  }
  json out{{"format", "msf.generators"},
           {"version", 1},
           {"space", json{{"dims", set.space().dims}}},
           {"generators", std::move(gens)}};
  if (!metadata.is_null()) out["metadata"] = metadata;
  return out;
}

GeneratorFile generator_file_from_json(const json& j, const FnRegistry* registry) {
  try {
    if (!j.is_object() || j.value("format", "") != "msf.generators")
      throw input_error("io.format", "not a generator file: expected format \"msf.generators\"");
    if (j.value("version", 0) != 1)
      throw input_error("io.format",
                        "unsupported generator file version " + j.value("version", json()).dump());
    SiteSpace space(j.at("space").at("dims").get<std::vector<std::uint32_t>>());
    std::vector<std::pair<std::string, MonomialOp>> gens;
    for (const auto& gj : j.at("generators"))
      gens.emplace_back(gj.at("name").get<std::string>(), op_from_json(gj, space, registry));
    return GeneratorFile{GeneratorSet(space, std::move(gens)), j.value("metadata", json())};
  } catch (const json::exception& e) {
    throw input_error("io.format", e.what());
  }
}

GeneratorFile load_generator_file(const std::string& path, const FnRegistry* registry) {
  std::ifstream in(path);
  if (!in) throw input_error("io.file", "cannot open '" + path + "' for reading");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw input_error("io.file", std::string("parse failure in '") + path + "': " + e.what());
  }
  return generator_file_from_json(j, registry);
}

void save_generator_file(const std::string& path, const GeneratorSet& set,
                         const json& metadata) {
  std::ofstream out(path);
  if (!out) throw input_error("io.file", "cannot open '" + path + "' for writing");
  out << generator_file_to_json(set, metadata).dump(2) << '\n';
  if (!out) throw input_error("io.file", "write failure on '" + path + "'");
}

std::string canonical_dump(const json& j) { return j.dump(); }

}  // namespace msf
