#include "alcp/optimizers.hpp"

namespace alcp {

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::GD: return "gd";
    case EngineKind::CG_FR: return "cg-fr";
    case EngineKind::CG_HSplus: return "cg-hs+";
    case EngineKind::CG_HZ: return "cg-hz";
  }
  return "unknown";
}

std::optional<EngineKind> parse_engine(std::string_view name) {
  if (name == "gd") return EngineKind::GD;
  if (name == "cg-fr") return EngineKind::CG_FR;
  if (name == "cg-hs+") return EngineKind::CG_HSplus;
  if (name == "cg-hz") return EngineKind::CG_HZ;
  return std::nullopt;
}

}  // namespace alcp
