#include "platospec/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace platospec {

namespace {

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> make_grid(double lo, double hi, double step) {
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  grid.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

// Indices of discrete local minima (plateaus count once, at their left edge).
std::vector<std::size_t> local_minima(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] < v[i - 1] && v[i] <= v[i + 1]) out.push_back(i);
  return out;
}

bool in_window(double k, const RootfindOptions& opts) {
  return k >= opts.k_min - opts.merge_tol && k <= opts.k_max + opts.merge_tol;
}

double scan_start(const RootfindOptions& opts) {
  const double lo = opts.k_min - opts.scan_step;
  return lo > 0.0 ? lo : 0.5 * opts.k_min;
}

}  // namespace

void RootfindOptions::validate() const {
  if (!(k_min > 0.0)) throw std::invalid_argument("k_min must be positive");
  if (!(k_max > k_min)) throw std::invalid_argument("k_max must exceed k_min");
  if (!(scan_step > 0.0)) throw std::invalid_argument("scan step must be positive");
  if (!(tol_accept > 0.0) || !(promote_tol >= tol_accept))
    throw std::invalid_argument("need 0 < tol_accept <= promote_tol");
  if (!(merge_tol >= 0.0)) throw std::invalid_argument("merge tolerance must be non-negative");
  if (max_refine_iters < 1) throw std::invalid_argument("max_refine_iters must be at least 1");
  if (!(refine_width > 0.0)) throw std::invalid_argument("refine width must be positive");
}

int Spectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& ev : eigenvalues) total += ev.multiplicity;
  return total;
}

bool Spectrum::converged() const {
  return std::none_of(rejected.begin(), rejected.end(),
                      [](const Rejection& r) { return r.reason == Rejection::Reason::NotConverged; });
}

std::vector<Eigenvalue> Spectrum::in_window(double lo, double hi) const {
  std::vector<Eigenvalue> out;
  for (const auto& ev : eigenvalues)
    if (ev.k >= lo && ev.k <= hi) out.push_back(ev);
  return out;
}

int effective_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("PLATOSPEC_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<int>(n, static_cast<int>(cap));
  }
  return n;
}

GoldenResult golden_section_minimize(const std::function<double(double)>& f, double a, double b, double width,
                                     int max_iters) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  GoldenResult res;
  while (res.iterations < max_iters && (b - a) > width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++res.iterations;
  }
  res.converged = (b - a) <= width;
  res.lo = a;
  res.hi = b;
  if (fc <= fd) {
    res.x = c;
    res.fx = fc;
  } else {
    res.x = d;
    res.fx = fd;
  }
  return res;
}

RefineResult refine_root(const Detector& detector, double k_lo, double k_hi, const RootfindOptions& opts) {
  const auto g = golden_section_minimize([&](double k) { return detector(k).sigma_min; }, k_lo, k_hi,
                                         opts.refine_width, opts.max_refine_iters);
  const SigmaReport rep = detector(g.x);
  RefineResult out;
  out.k = g.x;
  out.sigma = rep.sigma_min;
  out.next_sigma = rep.next_sigma;
  if (rep.sigma_min <= opts.tol_accept) {
    out.status = RefineResult::Status::Accepted;
    Eigenvalue ev;
    ev.k = g.x;
    ev.multiplicity = std::max(1, rep.near_zero_count);
    ev.residual = rep.sigma_min;
    // Keep the reported bracket strictly around k even when the golden
    // iterate sits on the final bracket edge.
    ev.k_lo = std::min(g.lo, std::nextafter(g.x, -HUGE_VAL));
    ev.k_hi = std::max(g.hi, std::nextafter(g.x, HUGE_VAL));
    ev.cluster = rep.next_sigma < 1e-4;
    out.eigenvalue = ev;
  } else if (rep.sigma_min <= opts.promote_tol) {
    out.status = RefineResult::Status::NotConverged;
  } else {
    out.status = RefineResult::Status::Spurious;
  }
  return out;
}

RefineResult refine_root(const SecularSystem& system, double k_lo, double k_hi, const RootfindOptions& opts) {
  return refine_root([&](double k) { return sigma_min(system, k); }, k_lo, k_hi, opts);
}

Spectrum scan_detector(const Detector& detector, const RootfindOptions& opts) {
  opts.validate();
  const int threads = effective_threads(opts.threads);

  Spectrum spec;
  spec.k_min = opts.k_min;
  spec.k_max = opts.k_max;
  spec.scan_step = opts.scan_step;

  const auto grid = make_grid(scan_start(opts), opts.k_max + opts.scan_step, opts.scan_step);
  std::vector<double> sig(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { sig[i] = detector(grid[i]).sigma_min; });

  const auto minima = local_minima(sig);
  std::vector<RefineResult> results(minima.size());
  parallel_for(minima.size(), threads, [&](std::size_t j) {
    const std::size_t i = minima[j];
    results[j] = refine_root(detector, grid[i - 1], grid[i + 1], opts);
  });

  spec.refinements = static_cast<int>(results.size());
  std::vector<Eigenvalue> found;
  std::vector<double> split_queue;
  for (const auto& r : results) {
    if (r.status == RefineResult::Status::Accepted) {
      found.push_back(*r.eigenvalue);
      if (r.next_sigma < opts.split_tol) split_queue.push_back(r.k);
    } else if (in_window(r.k, opts)) {
      spec.rejected.push_back({r.k, r.sigma,
                               r.status == RefineResult::Status::NotConverged ? Rejection::Reason::NotConverged
                                                                               : Rejection::Reason::Spurious});
    }
  }

  // Near-degenerate neighbourhoods: rescan finely so that roots closer than
  // one scan step are separated. Each new root is checked in turn.
  const double fine = opts.scan_step / 16.0;
  const double half = 2.0 * opts.scan_step;
  std::vector<double> visited;
  std::size_t budget = 100000;
  while (!split_queue.empty() && budget-- > 0) {
    const double center = split_queue.back();
    split_queue.pop_back();
    if (std::any_of(visited.begin(), visited.end(), [&](double c) { return std::abs(c - center) < fine; }))
      continue;
    visited.push_back(center);

    const auto sub = make_grid(std::max(center - half, 0.5 * opts.k_min), center + half, fine);
    std::vector<double> sv(sub.size());
    parallel_for(sub.size(), threads, [&](std::size_t i) { sv[i] = detector(sub[i]).sigma_min; });
    for (std::size_t i : local_minima(sv)) {
      if (std::any_of(found.begin(), found.end(),
                      [&](const Eigenvalue& e) { return e.k > sub[i - 1] && e.k < sub[i + 1]; }))
        continue;
      const auto r = refine_root(detector, sub[i - 1], sub[i + 1], opts);
      ++spec.refinements;
      if (r.status != RefineResult::Status::Accepted) continue;
      found.push_back(*r.eigenvalue);
      if (r.next_sigma < opts.split_tol) split_queue.push_back(r.k);
    }
  }

  for (const auto& ev : found)
    if (in_window(ev.k, opts)) spec.eigenvalues.push_back(ev);
  merge_spectrum(spec, opts.merge_tol);

  // A near-degenerate root with a resolved neighbour is not an unresolved cluster.
  auto& evs = spec.eigenvalues;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    if (!evs[i].cluster) continue;
    const bool left = i > 0 && evs[i].k - evs[i - 1].k < half;
    const bool right = i + 1 < evs.size() && evs[i + 1].k - evs[i].k < half;
    if (left || right) evs[i].cluster = false;
  }
  std::sort(spec.rejected.begin(), spec.rejected.end(),
            [](const Rejection& a, const Rejection& b) { return a.k < b.k; });
  return spec;
}

Spectrum scan_spectrum(const SecularSystem& system, const RootfindOptions& opts) {
  const double tol = multiplicity_tolerance(system.dimension());
  return scan_detector([&](double k) { return sigma_min(system, k, tol); }, opts);
}

Spectrum scan_scalar_zeros(const std::function<Complex(double)>& f, const RootfindOptions& opts,
                           const ScalarRootOptions& scalar) {
  opts.validate();
  const int threads = effective_threads(opts.threads);
  const auto g = [&](double k) { return std::abs(f(k)); };

  Spectrum spec;
  spec.k_min = opts.k_min;
  spec.k_max = opts.k_max;
  spec.scan_step = opts.scan_step;

  const auto grid = make_grid(scan_start(opts), opts.k_max + opts.scan_step, opts.scan_step);
  std::vector<double> v(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { v[i] = g(grid[i]); });

  const auto minima = local_minima(v);
  spec.refinements = static_cast<int>(minima.size());
  std::vector<std::optional<Eigenvalue>> out(minima.size());
  std::vector<std::optional<Rejection>> rej(minima.size());
  parallel_for(minima.size(), threads, [&](std::size_t j) {
    const std::size_t i = minima[j];
    const auto gs = golden_section_minimize(g, grid[i - 1], grid[i + 1], opts.refine_width, opts.max_refine_iters);
    const double h = scalar.probe;
    const double ref = std::max(g(gs.x + h), g(gs.x - h));
    const double rel = ref > 0.0 ? gs.fx / ref : 0.0;
    if (rel <= scalar.rel_tol) {
      const double outer = g(gs.x + h) + g(gs.x - h);
      const double inner = g(gs.x + h / 2) + g(gs.x - h / 2);
      int order = 1;
      if (inner > 0.0) order = std::max(1, static_cast<int>(std::lround(std::log2(outer / inner))));
      // Near a zero of order m >= 2, |f| is flat to rounding over a width of
      // about eps^(1/m); recentre from |f|^(1/m) sampled just outside it.
      double x = gs.x;
      if (order >= 2) {
        const double hp = 1e-5;
        for (int it = 0; it < 3; ++it) {
          const double up = std::pow(g(x + hp), 1.0 / order);
          const double um = std::pow(g(x - hp), 1.0 / order);
          if (!(up + um > 0.0)) break;
          const double nx = x - hp * (up - um) / (up + um);
          if (std::abs(nx - gs.x) > hp) break;
          x = nx;
        }
      }
      Eigenvalue ev;
      ev.k = x;
      ev.multiplicity = order;
      ev.residual = rel;
      const double half = std::max(0.5 * (gs.hi - gs.lo), std::abs(x) * 1e-15);
      ev.k_lo = x - half;
      ev.k_hi = x + half;
      out[j] = ev;
    } else {
      rej[j] = Rejection{gs.x, rel, Rejection::Reason::Spurious};
    }
  });
  for (const auto& ev : out)
    if (ev && in_window(ev->k, opts)) spec.eigenvalues.push_back(*ev);
  for (const auto& r : rej)
    if (r && in_window(r->k, opts)) spec.rejected.push_back(*r);
  merge_spectrum(spec, opts.merge_tol);
  return spec;
}

void merge_spectrum(Spectrum& spectrum, double merge_tol) {
  auto& evs = spectrum.eigenvalues;
  std::sort(evs.begin(), evs.end(), [](const Eigenvalue& a, const Eigenvalue& b) { return a.k < b.k; });
  std::vector<Eigenvalue> merged;
  std::size_t i = 0;
  while (i < evs.size()) {
    std::size_t j = i + 1;
    while (j < evs.size() && evs[j].k - evs[j - 1].k <= merge_tol) ++j;
    if (j == i + 1) {
      merged.push_back(evs[i]);
    } else {
      std::map<int, int> per_sector;
      Eigenvalue best = evs[i];
      bool cluster = false;
      for (std::size_t t = i; t < j; ++t) {
        auto& m = per_sector[evs[t].sector];
        m = std::max(m, evs[t].multiplicity);
        if (evs[t].residual < best.residual) best = evs[t];
        cluster = cluster || evs[t].cluster;
      }
      int total = 0;
      for (const auto& [sector, m] : per_sector) total += m;
      best.multiplicity = total;
      best.cluster = cluster;
      if (per_sector.size() > 1) best.sector = -1;
      merged.push_back(best);
    }
    i = j;
  }
  evs = std::move(merged);
}

NullSpace eigenfunction_coefficients(const SecularSystem& system, const Eigenvalue& ev) {
  const CMatrix m = assemble_normalized(system, ev.k);
  CMatrix vmat;
  const Eigen::VectorXd sv = singular_values(m, vmat);
  const double tol = multiplicity_tolerance(system.dimension());
  int count = 0;
  for (Eigen::Index i = sv.size() - 1; i >= 0 && sv(i) < tol; --i) ++count;
  if (count != ev.multiplicity)
    throw std::runtime_error("null space dimension " + std::to_string(count) + " at k = " + std::to_string(ev.k) +
                             " differs from multiplicity " + std::to_string(ev.multiplicity));
  NullSpace ns;
  ns.k = ev.k;
  const auto n = m.cols();
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXcd v = vmat.col(n - 1 - i);
    ns.residual = std::max(ns.residual, (m * v).norm());
    ns.basis.push_back(std::move(v));
  }
  if (ns.residual > 1e-7)
    throw std::runtime_error("null vector residual " + std::to_string(ns.residual) + " exceeds 1e-7");
  return ns;
}

Complex evaluate_edge(const Eigen::VectorXcd& coeffs, int edge, double k, double x) {
  return coeffs(2 * edge) * std::cos(k * x) + coeffs(2 * edge + 1) * std::sin(k * x);
}

}  // namespace platospec
