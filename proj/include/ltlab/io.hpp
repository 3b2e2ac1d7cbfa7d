#ifndef LTLAB_IO_HPP
#define LTLAB_IO_HPP

#include <string>

#include <json.hpp>

#include "ltlab/grid.hpp"
#include "ltlab/schrodinger.hpp"

namespace ltlab {

struct RieszReport;
struct ScfResult;
struct BirmanSchwingerResult;
struct ManifoldFit;
struct BindingCorrection;

/// Full-precision decimal formatting that round-trips doubles exactly.
std::string format_double(double v);

/// CSV with header "x,value" (line grids) or "r,value" (radial grids).
std::string potential_to_csv(const PotentialField& V);
void write_potential_csv(const PotentialField& V, const std::string& path);
PotentialField potential_from_csv_text(const std::string& text, int radial_dim = 3);
PotentialField potential_from_csv(const std::string& path, int radial_dim = 3);

nlohmann::json grid_to_json(const GridVariant& g);
GridVariant grid_from_json(const nlohmann::json& j);
nlohmann::json potential_to_json(const PotentialField& V);
PotentialField potential_from_json(const nlohmann::json& j);

nlohmann::json spectrum_to_json(const SpectrumResult& r);
nlohmann::json riesz_to_json(const RieszReport& r);
nlohmann::json scf_to_json(const ScfResult& r);
nlohmann::json bs_to_json(const BirmanSchwingerResult& r);
nlohmann::json manifold_fit_to_json(const ManifoldFit& f);
nlohmann::json binding_to_json(const BindingCorrection& b);

} // namespace ltlab

#endif
