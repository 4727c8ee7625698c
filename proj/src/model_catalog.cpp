#include <map>
#include <numeric>

#include "sympdirac/foliated_geometry.hpp"

namespace sympdirac {

namespace {

const std::map<std::string, ModelKind>& kind_table() {
  static const std::map<std::string, ModelKind> table = {
      {"FlatKahlerTorus", ModelKind::FlatKahlerTorus},
      {"HeisenbergFlow", ModelKind::HeisenbergFlow},
      {"WarpedNonTaut", ModelKind::WarpedNonTaut},
      {"SymmetricPerturbedFedosov", ModelKind::SymmetricPerturbedFedosov},
      {"TorsionPerturbedSymplectic", ModelKind::TorsionPerturbedSymplectic},
      {"ChscFiber", ModelKind::ChscFiber},
  };
  return table;
}

std::vector<double> random_symmetric_3tensor(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> raw(d * d * d);
  for (auto& v : raw) v = normal(rng);
  std::vector<double> out(d * d * d, 0.0);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        const int perms[6][3] = {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}};
        double s = 0.0;
        for (const auto& p : perms) s += raw[(p[0] * d + p[1]) * d + p[2]];
        out[(a * d + b) * d + c] = s / 6.0;
      }
    }
  }
  return out;
}

// One element of sp(n) per frame direction, flattened (X, l, k).
std::vector<double> random_sp_family(int n, Rng& rng) {
  const int d = 2 * n;
  std::vector<double> out(d * d * d);
  for (int x = 0; x < d; ++x) {
    const RealMatrix a = random_sp(n, rng);
    for (int l = 0; l < d; ++l) {
      for (int k = 0; k < d; ++k) out[(x * d + l) * d + k] = a(l, k);
    }
  }
  return out;
}

std::vector<double> scaled(std::vector<double> v, double s) {
  for (auto& x : v) x *= s;
  return v;
}

}  // namespace

std::string model_name(ModelKind kind) {
  for (const auto& [name, k] : kind_table()) {
    if (k == kind) return name;
  }
  throw InvalidArgument("unknown model kind");
}

ModelKind parse_model_kind(const std::string& name) {
  auto it = kind_table().find(name);
  if (it == kind_table().end()) throw InvalidArgument("unknown model name: " + name);
  return it->second;
}

ModelSpec default_model_spec(ModelKind kind, int n, int cutoff, std::uint64_t seed, double amplitude) {
  ModelSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.cutoff = cutoff;
  const int d = 2 * n;
  Rng rng(seed);
  switch (kind) {
    case ModelKind::FlatKahlerTorus:
    case ModelKind::HeisenbergFlow:
    case ModelKind::ChscFiber:
      break;
    case ModelKind::WarpedNonTaut: {
      spec.warp.push_back({unit_mode(d, 0), 0.5 * amplitude, 0.0});
      spec.warp.push_back({unit_mode(d, n), 0.0, 0.25 * amplitude});
      break;
    }
    case ModelKind::SymmetricPerturbedFedosov: {
      Mode diagonal = zero_mode(d);
      diagonal[0] = 1;
      diagonal[n] = 1;
      spec.symmetric.push_back({{zero_mode(d), 1.0, 0.0}, scaled(random_symmetric_3tensor(d, rng), 1.5 * amplitude)});
      spec.symmetric.push_back({{diagonal, 1.0, 0.0}, scaled(random_symmetric_3tensor(d, rng), amplitude)});
      break;
    }
    case ModelKind::TorsionPerturbedSymplectic: {
      spec.torsion.push_back({{zero_mode(d), 1.0, 0.0}, scaled(random_sp_family(n, rng), 1.5 * amplitude)});
      spec.torsion.push_back({{unit_mode(d, 0), 1.0, 0.0}, scaled(random_sp_family(n, rng), amplitude)});
      spec.torsion.push_back({{unit_mode(d, n), 0.0, 1.0}, scaled(random_sp_family(n, rng), 0.5 * amplitude)});
      break;
    }
  }
  return spec;
}

}  // namespace sympdirac
