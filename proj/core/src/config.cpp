#include "topmg/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace topmg {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

index_t parse_index(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return static_cast<index_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' needs an integer, got '" +
                      value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' needs a number, got '" +
                      value + "'");
  }
}

}  // namespace

void RunConfig::set_key(const std::string& key, const std::string& value) {
  if (key == "nx") nx = parse_index(key, value);
  else if (key == "ny") ny = parse_index(key, value);
  else if (key == "nz") nz = parse_index(key, value);
  else if (key == "lx") lx = parse_real(key, value);
  else if (key == "ly") ly = parse_real(key, value);
  else if (key == "lz") lz = parse_real(key, value);
  else if (key == "ncc") ncc = parse_index(key, value);
  else if (key == "sd") sd = parse_index(key, value);
  else if (key == "lc") lc = parse_index(key, value);
  else if (key == "lcc") lcc = parse_index(key, value);
  else if (key == "sweeps") sweeps = static_cast<int>(parse_index(key, value));
  else if (key == "cr") cr = static_cast<int>(parse_index(key, value));
  else if (key == "kappa_lo") kappa_lo = parse_real(key, value);
  else if (key == "f0") f0 = parse_real(key, value);
  else if (key == "p") p = static_cast<int>(parse_index(key, value));
  else if (key == "td") td = parse_real(key, value);
  else if (key == "patch_side") patch_side = parse_real(key, value);
  else if (key == "vstar") vstar = parse_real(key, value);
  else if (key == "levels") levels = static_cast<int>(parse_index(key, value));
  else if (key == "iters") {
    iters.clear();
    for (const std::string& part : split_list(value))
      iters.push_back(static_cast<int>(parse_index(key, part)));
  } else if (key == "move_limit") move_limit = parse_real(key, value);
  else if (key == "conv_dx") conv_dx = parse_real(key, value);
  else if (key == "precond") precond = value;
  else if (key == "rtol") rtol = parse_real(key, value);
  else if (key == "maxit") maxit = static_cast<int>(parse_index(key, value));
  else if (key == "threads") threads = static_cast<int>(parse_index(key, value));
  else if (key == "out_dir") out_dir = value;
  else if (key == "bench_crs") {
    bench_crs.clear();
    for (const std::string& part : split_list(value))
      bench_crs.push_back(static_cast<int>(parse_index(key, part)));
  } else if (key == "bench_preconds") bench_preconds = split_list(value);
  else if (key == "seed") seed = static_cast<std::uint64_t>(parse_index(key, value));
  else throw ConfigError("config: unknown key '" + key + "'");
}

void apply_config_line(RunConfig& cfg, const std::string& raw) {
  std::string line = raw;
  const auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string::npos)
    throw ConfigError("config: expected 'key = value', got '" + line + "'");
  cfg.set_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path);
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) apply_config_line(cfg, line);
  return cfg;
}

std::vector<GridSpec> RunConfig::schedule() const {
  std::vector<GridSpec> grids;
  for (int level = 0; level < levels; ++level) {
    const index_t div = index_t{1} << (levels - 1 - level);
    if (nx % div != 0 || ny % div != 0 || nz % div != 0)
      throw ConfigError(
          "config: grid is not divisible by 2^(levels-1); adjust nx/ny/nz or "
          "levels");
    grids.emplace_back(nx / div, ny / div, nz / div, lx, ly, lz);
  }
  return grids;
}

MaterialModel RunConfig::material() const {
  return MaterialModel::from_contrast(cr, kappa_lo, f0, p);
}

BoundarySpec RunConfig::boundary() const {
  return BoundarySpec::bottom_center_patch(lx, ly, patch_side, td);
}

void RunConfig::validate() const {
  if (nx <= 0 || ny <= 0 || nz <= 0)
    throw ConfigError("config: nx/ny/nz must be positive");
  if (lx <= 0 || ly <= 0 || lz <= 0)
    throw ConfigError("config: lx/ly/lz must be positive");
  if (levels < 1) throw ConfigError("config: levels must be >= 1");
  if (static_cast<int>(iters.size()) != levels)
    throw ConfigError("config: iters must list one budget per level");
  for (int it : iters)
    if (it < 0) throw ConfigError("config: iteration budgets must be >= 0");

  const std::vector<GridSpec> grids = schedule();
  for (const GridSpec& g : grids)
    (void)build_hierarchy(g, {ncc, ncc, ncc}, sd);  // throws on bad divisibility

  const HierarchicalGrid coarsest =
      build_hierarchy(grids.front(), {ncc, ncc, ncc}, sd);
  if (lc < 1 || lc > coarsest.cells_in_coarse())
    throw ConfigError(
        "config: lc must lie in [1, cells per coarse element] at every level");
  if (lcc < 1 || lcc > sd * sd * sd * lc)
    throw ConfigError("config: lcc must lie in [1, sd^3 * lc]");
  if (sweeps < 0) throw ConfigError("config: sweeps must be >= 0");

  (void)material();  // validates cr/kappa_lo/f0/p
  if (!(vstar > 0.0 && vstar <= 1.0))
    throw ConfigError("config: vstar must lie in (0, 1]");
  if (!(patch_side > 0.0) || patch_side > lx || patch_side > ly)
    throw ConfigError("config: patch_side must lie in (0, min(lx, ly)]");
  boundary().validate(grids.back());

  (void)parse_precond_kind(precond);
  if (!(rtol > 0.0)) throw ConfigError("config: rtol must be positive");
  if (maxit < 1) throw ConfigError("config: maxit must be >= 1");
  if (threads < 0) throw ConfigError("config: threads must be >= 0");
  if (!(move_limit > 0.0 && move_limit <= 1.0))
    throw ConfigError("config: move_limit must lie in (0, 1]");

  for (int bench_cr : bench_crs)
    (void)MaterialModel::from_contrast(bench_cr, kappa_lo, f0, p);
  for (const std::string& name : bench_preconds)
    (void)parse_precond_kind(name);
}

OptimConfig RunConfig::optim_config() const {
  OptimConfig cfg;
  cfg.vstar = vstar;
  cfg.schedule = schedule();
  cfg.iters_per_level = iters;
  cfg.convergence_dx = conv_dx;
  cfg.mma.move_limit = move_limit;
  cfg.ncc = {ncc, ncc, ncc};
  cfg.sd = sd;
  cfg.mmg.num_local_basis = lc;
  cfg.mmg.num_cc_basis = lcc;
  cfg.mmg.smoother_sweeps = sweeps;
  cfg.precond = precond_kind();
  cfg.rtol = rtol;
  cfg.maxit = maxit;
  return cfg;
}

std::string RunConfig::describe() const {
  std::ostringstream out;
  out << "grid        : " << nx << " x " << ny << " x " << nz << " cells over "
      << lx << " x " << ly << " x " << lz << "\n";
  out << "hierarchy   : ncc = " << ncc << "^3, sd = " << sd << ", lc = " << lc
      << ", lcc = " << lcc << ", sweeps = " << sweeps << "\n";
  out << "material    : cr = " << cr << " (kappa " << kappa_lo << " .. "
      << kappa_lo * std::pow(10.0, cr) << "), f0 = " << f0 << ", p = " << p
      << "\n";
  out << "boundary    : bottom-center Dirichlet patch " << patch_side << " x "
      << patch_side << " at T = " << td << "\n";
  out << "optimization: vstar = " << vstar << ", levels = " << levels
      << ", iters =";
  for (int it : iters) out << " " << it;
  out << ", move limit = " << move_limit << ", conv_dx = " << conv_dx << "\n";
  out << "solver      : precond = " << precond << ", rtol = " << rtol
      << ", maxit = " << maxit << "\n";
  out << "execution   : threads = " << threads << ", out_dir = " << out_dir
      << "\n";
  return out.str();
}

}  // namespace topmg
