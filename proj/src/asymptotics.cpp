#include "platospec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace platospec {

namespace {

constexpr double pi = std::numbers::pi;

double periodic_distance(double x, double period) { return std::abs(x - period * std::round(x / period)); }

void attribute(TargetResult& r, const Eigenvalue& ev, double scaled) {
  if (scaled >= r.max_scaled_dist) {
    r.max_scaled_dist = scaled;
    r.worst_k = ev.k;
  }
}

RootfindOptions windowed(const RootfindOptions& base, double lo, double hi) {
  RootfindOptions o = base;
  o.k_min = lo;
  o.k_max = hi;
  return o;
}

}  // namespace

Lattice Lattice::fixed(double center, double period) {
  if (!(period > 0.0)) throw std::invalid_argument("lattice period must be positive");
  return {CenterFamily::Fixed, center, period};
}

double Lattice::distance(double k) const {
  switch (family) {
    case CenterFamily::NPi:
      return periodic_distance(k, pi);
    case CenterFamily::TwoNPi:
      return periodic_distance(k, 2 * pi);
    case CenterFamily::PiPlus2NPi:
      return periodic_distance(k - pi, 2 * pi);
    case CenterFamily::HalfPiPlusNPi:
      return periodic_distance(k - pi / 2, pi);
    case CenterFamily::Fixed:
      return std::min(periodic_distance(k - center, period), periodic_distance(k + center, period));
  }
  return std::numeric_limits<double>::infinity();
}

std::string Lattice::label() const {
  switch (family) {
    case CenterFamily::NPi:
      return "n*pi";
    case CenterFamily::TwoNPi:
      return "2n*pi";
    case CenterFamily::PiPlus2NPi:
      return "pi+2n*pi";
    case CenterFamily::HalfPiPlusNPi:
      return "pi/2+n*pi";
    case CenterFamily::Fixed: {
      char buf[96];
      std::snprintf(buf, sizeof buf, "+-%.6f+n*%.6f", center, period);
      return buf;
    }
  }
  return "?";
}

double Envelope::scaled(double k, double dist) const {
  switch (kind) {
    case EnvelopeKind::Exact:
      return dist;
    case EnvelopeKind::InverseK:
      return k * dist;
    case EnvelopeKind::InverseK2:
      return k * k * dist;
  }
  return dist;
}

double theorem_constant(Solid solid) {
  switch (solid) {
    case Solid::Tetrahedron:
    case Solid::Cube:
      return 2.0 * std::sqrt(3.0);
    case Solid::Octahedron:
      return std::sqrt(10.0);
    case Solid::Dodecahedron:
      return 5.51;
    case Solid::Icosahedron:
      return 10.84;
  }
  throw std::invalid_argument("unknown solid");
}

std::vector<ClusterTarget> theorem_targets(Solid solid) {
  if (solid != Solid::Octahedron)
    return {{"n*pi", Lattice::n_pi(), {EnvelopeKind::InverseK, theorem_constant(solid), kSlackInverseK}, 0}};
  return {
      {"2n*pi exact", Lattice::two_n_pi(), {EnvelopeKind::Exact, kExactTolerance, 0.0}, 8},
      {"+-2pi/3+2n*pi exact", Lattice::fixed(2 * pi / 3, 2 * pi), {EnvelopeKind::Exact, kExactTolerance, 0.0}, 2},
      {"pi+2n*pi", Lattice::pi_plus_two_n_pi(), {EnvelopeKind::InverseK, std::sqrt(10.0), kSlackInverseK}, 0},
      {"pi/2+n*pi", Lattice::half_pi_plus_n_pi(), {EnvelopeKind::InverseK2, 5.0, kSlackInverseK2}, 0},
  };
}

bool AsymptoticReport::pass() const {
  if (!spectrum_converged || !unassigned.empty() || !ambiguous.empty()) return false;
  const auto ok = [](const TargetResult& t) { return t.pass; };
  return std::all_of(targets.begin(), targets.end(), ok) && std::all_of(restatements.begin(), restatements.end(), ok);
}

AsymptoticReport classify(Solid solid, const Spectrum& spectrum, double k_lo, double k_hi) {
  AsymptoticReport rep;
  rep.solid = solid;
  rep.k_lo = k_lo;
  rep.k_hi = k_hi;
  rep.spectrum_converged = spectrum.converged();
  for (const auto& t : theorem_targets(solid)) rep.targets.push_back({t, 0, 0, 0.0, 0.0, {}, true});
  if (solid == Solid::Dodecahedron || solid == Solid::Icosahedron) {
    ClusterTarget t{"|k sin k|", Lattice::n_pi(), {EnvelopeKind::InverseK, theorem_constant(solid), kSlackInverseK}, 0};
    rep.restatements.push_back({t, 0, 0, 0.0, 0.0, {}, true});
  }

  for (const auto& ev : spectrum.eigenvalues) {
    if (ev.k < k_lo || ev.k > k_hi) continue;
    ++rep.eigenvalue_count;
    rep.total_multiplicity += ev.multiplicity;

    std::vector<std::size_t> inside;
    std::size_t closest = 0;
    double closest_ratio = std::numeric_limits<double>::infinity();
    std::vector<double> scaled(rep.targets.size());
    for (std::size_t i = 0; i < rep.targets.size(); ++i) {
      const auto& t = rep.targets[i].target;
      scaled[i] = t.envelope.scaled(ev.k, t.lattice.distance(ev.k));
      if (scaled[i] <= t.envelope.bound()) inside.push_back(i);
      const double ratio = scaled[i] / t.envelope.bound();
      if (ratio < closest_ratio) {
        closest_ratio = ratio;
        closest = i;
      }
    }

    if (inside.size() == 1) {
      auto& r = rep.targets[inside[0]];
      attribute(r, ev, scaled[inside[0]]);
      ++r.count;
      r.total_multiplicity += ev.multiplicity;
      if (r.target.required_multiplicity > 0 && ev.multiplicity != r.target.required_multiplicity) {
        r.offenders.push_back(ev.k);
        r.pass = false;
      }
    } else if (inside.empty()) {
      rep.unassigned.push_back(ev.k);
      auto& r = rep.targets[closest];
      attribute(r, ev, scaled[closest]);
      r.offenders.push_back(ev.k);
      r.pass = false;
    } else {
      rep.ambiguous.push_back(ev.k);
    }

    for (auto& r : rep.restatements) {
      const double v = std::abs(ev.k * std::sin(ev.k));
      attribute(r, ev, v);
      ++r.count;
      r.total_multiplicity += ev.multiplicity;
      if (v > r.target.envelope.bound()) {
        r.offenders.push_back(ev.k);
        r.pass = false;
      }
    }
  }
  return rep;
}

AsymptoticReport check_theorem(Solid solid, double k_lo, double k_hi, const RootfindOptions& base) {
  const auto system = make_system(solid, CouplingSpec::preferred_orientation());
  const auto spectrum = scan_spectrum(system, windowed(base, k_lo, k_hi));
  return classify(solid, spectrum, k_lo, k_hi);
}

DriftReport drift_from_spectra(Solid solid, double alpha, const Spectrum& delta, const Spectrum& kirchhoff,
                               double k_lo, double k_hi) {
  DriftReport rep;
  rep.solid = solid;
  rep.alpha = alpha;
  rep.k_lo = k_lo;
  rep.k_hi = k_hi;
  rep.converged = delta.converged() && kirchhoff.converged();
  for (const auto& ev : delta.eigenvalues) {
    if (ev.k < k_lo || ev.k > k_hi) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ref : kirchhoff.eigenvalues) best = std::min(best, std::abs(ev.k - ref.k));
    if (best > kPairingRadius) {
      rep.unpaired.push_back(ev.k);
      continue;
    }
    ++rep.paired;
    const double scaled = ev.k * best;
    if (scaled >= rep.max_scaled_drift) {
      rep.max_scaled_drift = scaled;
      rep.worst_k = ev.k;
    }
  }
  return rep;
}

DriftReport kirchhoff_drift(Solid solid, double alpha, double k_lo, double k_hi, const RootfindOptions& base) {
  const auto opts = windowed(base, k_lo, k_hi);
  const auto delta = scan_spectrum(make_system(solid, CouplingSpec::delta(alpha)), opts);
  const auto ref_opts = windowed(base, std::max(base.k_min, k_lo - kPairingRadius), k_hi + kPairingRadius);
  const auto kirchhoff = scan_spectrum(make_system(solid, CouplingSpec::delta(0.0)), ref_opts);
  return drift_from_spectra(solid, alpha, delta, kirchhoff, k_lo, k_hi);
}

DriftComparison compare_drift(Solid solid, double alpha, double lo1, double hi1, double lo2, double hi2,
                              const RootfindOptions& base) {
  DriftComparison cmp;
  cmp.first = kirchhoff_drift(solid, alpha, lo1, hi1, base);
  cmp.second = kirchhoff_drift(solid, alpha, lo2, hi2, base);
  if (cmp.first.max_scaled_drift > 0.0)
    cmp.ratio = cmp.second.max_scaled_drift / cmp.first.max_scaled_drift;
  else
    cmp.ratio = cmp.second.max_scaled_drift > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return cmp;
}

std::vector<Lattice> fixed_point_targets(Solid solid, OracleCoupling coupling) {
  const auto fx = [](double c) { return Lattice::fixed(c, 2 * pi); };
  if (coupling == OracleCoupling::Delta) {
    switch (solid) {
      case Solid::Tetrahedron:
        return {Lattice::n_pi(), fx(std::acos(-1.0 / 3))};
      case Solid::Cube:
        return {Lattice::n_pi(), fx(std::acos(1.0 / 3)), fx(std::acos(-1.0 / 3))};
      case Solid::Octahedron:
        return {Lattice::n_pi(), fx(2 * pi / 3), Lattice::half_pi_plus_n_pi()};
      case Solid::Dodecahedron:
        return {Lattice::n_pi(),
                fx(std::acos(1.0 / 3)),
                fx(std::acos(-2.0 / 3)),
                Lattice::half_pi_plus_n_pi(),
                fx(std::acos(std::sqrt(5.0) / 3)),
                fx(std::acos(-std::sqrt(5.0) / 3))};
      case Solid::Icosahedron:
        return {Lattice::n_pi(), fx(std::acos(-1.0 / 5)), fx(std::acos(std::sqrt(5.0) / 5)),
                fx(std::acos(-std::sqrt(5.0) / 5))};
    }
  } else {
    switch (solid) {
      case Solid::Tetrahedron:
      case Solid::Cube:
        return {Lattice::two_n_pi(), Lattice::pi_plus_two_n_pi()};
      case Solid::Octahedron:
        return {Lattice::two_n_pi(), fx(2 * pi / 3), Lattice::pi_plus_two_n_pi(), Lattice::half_pi_plus_n_pi()};
      case Solid::Dodecahedron:
      case Solid::Icosahedron:
        return {Lattice::n_pi()};
    }
  }
  throw std::invalid_argument("unknown solid/coupling pair");
}

FujiwaraBound fujiwara_bound(double a2, double a1, double a0) {
  a2 = std::abs(a2);
  a1 = std::abs(a1);
  a0 = std::abs(a0);
  FujiwaraBound out;
  out.initial = 2.0 * std::max({a2, std::sqrt(a1), std::cbrt(a0 / 2.0)});
  double a = out.initial;
  for (out.iterations = 0; out.iterations < 10000; ++out.iterations) {
    const double next = std::cbrt(a2 * a * a + a1 * a + a0);
    const bool done = std::abs(next - a) <= 1e-13 * a;
    a = next;
    if (done) break;
  }
  out.refined = a;
  out.k_sin_k = std::sqrt(a);
  return out;
}

}  // namespace platospec
