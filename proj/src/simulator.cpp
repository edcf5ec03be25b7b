#include "gi/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "gi/rng.hpp"
#include "gi/summation.hpp"

namespace gi {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 32) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// ---------------------------------------------------------------------------
// MaskSpec
// ---------------------------------------------------------------------------

int MaskSpec::in_cell_count() const {
  return static_cast<int>(std::count(transmission.begin(), transmission.end(),
                                     std::uint8_t{1}));
}

int MaskSpec::out_cell_count() const { return cell_count() - in_cell_count(); }

std::vector<int> MaskSpec::in_cells() const {
  std::vector<int> idx;
  for (int i = 0; i < cell_count(); ++i)
    if (transmission[i]) idx.push_back(i);
  return idx;
}

std::vector<int> MaskSpec::out_cells() const {
  std::vector<int> idx;
  for (int i = 0; i < cell_count(); ++i)
    if (!transmission[i]) idx.push_back(i);
  return idx;
}

void MaskSpec::validate() const {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("mask: grid must be at least 1x1");
  if (transmission.size() != static_cast<std::size_t>(cell_count()))
    throw std::invalid_argument("mask: transmission size != rows*cols");
  for (auto t : transmission)
    if (t > 1) throw std::invalid_argument("mask: transmission must be 0 or 1");
  if (in_cell_count() < 1)
    throw std::invalid_argument("mask: needs at least one T=1 cell");
  if (out_cell_count() < 1)
    throw std::invalid_argument("mask: needs at least one T=0 cell");
}

MaskSpec MaskSpec::blocks(int in, int out) {
  MaskSpec m;
  m.rows = 1;
  m.cols = in + out;
  m.transmission.assign(static_cast<std::size_t>(in + out), 0);
  std::fill_n(m.transmission.begin(), in, std::uint8_t{1});
  return m;
}

MaskSpec MaskSpec::rect(int rows, int cols, int r0, int c0, int r1, int c1) {
  MaskSpec m;
  m.rows = rows;
  m.cols = cols;
  m.transmission.assign(static_cast<std::size_t>(rows) * cols, 0);
  for (int r = std::max(r0, 0); r < std::min(r1, rows); ++r)
    for (int c = std::max(c0, 0); c < std::min(c1, cols); ++c)
      m.transmission[static_cast<std::size_t>(r) * cols + c] = 1;
  return m;
}

// ---------------------------------------------------------------------------
// FrameStack
// ---------------------------------------------------------------------------

double FrameStack::obj(long frame, int cell) const {
  const std::size_t i =
      static_cast<std::size_t>(frame) * cell_count() + cell;
  return normalized ? obj_values[i] : static_cast<double>(obj_counts[i]);
}

double FrameStack::ref(long frame, int cell) const {
  const std::size_t i =
      static_cast<std::size_t>(frame) * cell_count() + cell;
  return normalized ? ref_values[i] : static_cast<double>(ref_counts[i]);
}

double FrameStack::bucket(long frame, const MaskSpec& m) const {
  if (m.rows != mask.rows || m.cols != mask.cols)
    throw std::invalid_argument("bucket: mask grid not congruent with stack");
  const std::size_t base = static_cast<std::size_t>(frame) * cell_count();
  if (!normalized) {
    std::uint64_t s = 0;
    for (int c = 0; c < cell_count(); ++c)
      if (m.transmission[c]) s += obj_counts[base + c];
    return static_cast<double>(s);
  }
  double s = 0;
  for (int c = 0; c < cell_count(); ++c)
    if (m.transmission[c]) s += obj_values[base + c];
  return s;
}

// ---------------------------------------------------------------------------
// sample_stack
// ---------------------------------------------------------------------------

namespace {

void generate_frame(const ExperimentParams& p, int cells, std::uint64_t seed,
                    long frame, std::uint32_t* obj, std::uint32_t* ref,
                    double* mu_record) {
  FrameRng rng(seed, static_cast<std::uint64_t>(frame));
  double mu = p.mu;
  if (p.pump_mu_variance > 0) {
    mu = sample_truncated_normal(rng, p.mu, std::sqrt(p.pump_mu_variance));
    if (mu_record) *mu_record = mu;
  }
  const bool twin = p.source == SourceKind::TwinBeam;
  for (int c = 0; c < cells; ++c) {
    std::uint64_t o = 0, r = 0;
    for (long m = 0; m < p.modes_per_pixel; ++m) {
      if (twin) {
        const long n = sample_bose_einstein(rng, mu);
        o += sample_binomial(rng, n, p.eta1);
        r += sample_binomial(rng, n, p.eta2);
      } else {
        const long n = sample_bose_einstein(rng, 2.0 * mu);
        const long a = sample_binomial(rng, n, 0.5);
        o += sample_binomial(rng, a, p.eta1);
        r += sample_binomial(rng, n - a, p.eta2);
      }
    }
    if (o > std::numeric_limits<std::uint32_t>::max() ||
        r > std::numeric_limits<std::uint32_t>::max())
      throw std::runtime_error("sample_stack: cell count overflows 32 bits");
    obj[c] = static_cast<std::uint32_t>(o);
    ref[c] = static_cast<std::uint32_t>(r);
  }
}

}  // namespace

FrameStack sample_stack(const ExperimentParams& params, const MaskSpec& mask,
                        std::uint64_t seed, int workers) {
  params.validate();
  mask.validate();
  if (workers < 1) throw std::invalid_argument("sample_stack: workers >= 1");

  if (params.pump_mu_variance > 0) {
    // Probability mass of the untruncated Gaussian below zero.
    const double sd = std::sqrt(params.pump_mu_variance);
    const double mass = 0.5 * std::erfc(params.mu / (sd * std::sqrt(2.0)));
    if (mass > 1e-3)
      throw std::invalid_argument(
          "sample_stack: V(mu) puts > 1e-3 probability mass below mu=0");
  }

  FrameStack st;
  st.mask = mask;
  st.params = params;
  st.seed = seed;
  st.frames = params.frames;
  const int cells = mask.cell_count();
  const std::size_t total = static_cast<std::size_t>(st.frames) * cells;
  st.obj_counts.resize(total);
  st.ref_counts.resize(total);
  if (params.pump_mu_variance > 0) {
    st.frame_mu.resize(static_cast<std::size_t>(st.frames));
    const double sd = std::sqrt(params.pump_mu_variance);
    const double mass = 0.5 * std::erfc(params.mu / (sd * std::sqrt(2.0)));
    if (mass > 0)
      st.warnings.push_back(
          "pump mu distribution truncated at zero (below-zero mass " +
          std::to_string(mass) + "), renormalized by rejection");
  }

  auto run_range = [&](long lo, long hi) {
    for (long k = lo; k < hi; ++k)
      generate_frame(params, cells, seed, k,
                     st.obj_counts.data() + static_cast<std::size_t>(k) * cells,
                     st.ref_counts.data() + static_cast<std::size_t>(k) * cells,
                     st.frame_mu.empty() ? nullptr : &st.frame_mu[k]);
  };

  const int n_workers =
      std::min<long>(std::max(workers, 1), std::max<long>(st.frames, 1));
  if (n_workers == 1) {
    run_range(0, st.frames);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (st.frames + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
      const long lo = w * chunk;
      const long hi = std::min<long>(lo + chunk, st.frames);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  return st;
}

// ---------------------------------------------------------------------------
// normalize_frames
// ---------------------------------------------------------------------------

FrameStack normalize_frames(const FrameStack& stack,
                            const std::vector<int>& region) {
  if (stack.normalized)
    throw std::invalid_argument("normalize_frames: stack already normalized");
  const int cells = stack.cell_count();
  std::vector<int> reg = region;
  if (reg.empty()) {
    reg.resize(cells);
    for (int c = 0; c < cells; ++c) reg[c] = c;
  }
  for (int c : reg)
    if (c < 0 || c >= cells)
      throw std::invalid_argument("normalize_frames: region cell out of range");

  std::vector<double> frame_mean(static_cast<std::size_t>(stack.frames));
  std::vector<long> kept;
  kept.reserve(static_cast<std::size_t>(stack.frames));
  for (long k = 0; k < stack.frames; ++k) {
    double s = 0;
    for (int c : reg) s += stack.ref(k, c);
    frame_mean[k] = s / static_cast<double>(reg.size());
    if (frame_mean[k] > 0) kept.push_back(k);
  }

  FrameStack out;
  out.mask = stack.mask;
  out.params = stack.params;
  out.seed = stack.seed;
  out.normalized = true;
  out.frames = static_cast<long>(kept.size());
  out.dropped_frames =
      stack.dropped_frames + (stack.frames - out.frames);
  out.warnings = stack.warnings;
  if (out.frames == 0)
    throw std::invalid_argument(
        "normalize_frames: every frame has zero region mean");
  if (out.frames < stack.frames)
    out.warnings.push_back("normalize_frames: dropped " +
                           std::to_string(stack.frames - out.frames) +
                           " empty frame(s)");

  std::vector<double> kept_means(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i)
    kept_means[i] = frame_mean[kept[i]];
  const double global_mean = mean_of(kept_means);

  out.obj_values.resize(kept.size() * cells);
  out.ref_values.resize(kept.size() * cells);
  if (!stack.frame_mu.empty()) out.frame_mu.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const long k = kept[i];
    const double factor = global_mean / frame_mean[k];
    for (int c = 0; c < cells; ++c) {
      out.obj_values[i * cells + c] = stack.obj(k, c) * factor;
      out.ref_values[i * cells + c] = stack.ref(k, c) * factor;
    }
    if (!stack.frame_mu.empty()) out.frame_mu.push_back(stack.frame_mu[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// reconstruct
// ---------------------------------------------------------------------------

GhostImage reconstruct(const FrameStack& stack, ProtocolKind kind,
                       const MaskSpec& mask) {
  mask.validate();
  if (mask.rows != stack.mask.rows || mask.cols != stack.mask.cols)
    throw std::invalid_argument("reconstruct: mask grid not congruent");
  const long k_frames = stack.frames;
  if (k_frames < 2)
    throw std::invalid_argument("reconstruct: needs at least 2 frames");

  const int cells = stack.cell_count();
  GhostImage img;
  img.kind = kind;
  img.rows = mask.rows;
  img.cols = mask.cols;
  img.frames_used = k_frames;
  img.values.assign(static_cast<std::size_t>(cells), 0.0);
  img.flags.assign(static_cast<std::size_t>(cells), 0);

  std::vector<double> bucket(static_cast<std::size_t>(k_frames));
  for (long k = 0; k < k_frames; ++k) bucket[k] = stack.bucket(k, mask);
  const double mean_b = mean_of(bucket);

  std::vector<double> y(static_cast<std::size_t>(k_frames));
  std::vector<double> t(static_cast<std::size_t>(k_frames));
  for (int c = 0; c < cells; ++c) {
    for (long k = 0; k < k_frames; ++k) y[k] = stack.ref(k, c);
    switch (kind) {
      case ProtocolKind::G2: {
        for (long k = 0; k < k_frames; ++k) t[k] = bucket[k] * y[k];
        img.values[c] = mean_of(t);
        break;
      }
      case ProtocolKind::NormalizedG2: {
        const double mean_y = mean_of(y);
        if (mean_b == 0 || mean_y == 0) {
          img.flags[c] = 1;
          break;
        }
        for (long k = 0; k < k_frames; ++k) t[k] = bucket[k] * y[k];
        img.values[c] = mean_of(t) / (mean_b * mean_y);
        break;
      }
      case ProtocolKind::Covariance: {
        const double mean_y = mean_of(y);
        for (long k = 0; k < k_frames; ++k) t[k] = bucket[k] * y[k];
        img.values[c] = mean_of(t) - mean_b * mean_y;
        break;
      }
      case ProtocolKind::DifferenceVariance: {
        for (long k = 0; k < k_frames; ++k) t[k] = bucket[k] - y[k];
        const double m1 = mean_of(t);
        for (long k = 0; k < k_frames; ++k) t[k] = t[k] * t[k];
        img.values[c] = mean_of(t) - m1 * m1;
        break;
      }
    }
  }
  return img;
}

// ---------------------------------------------------------------------------
// empirical_snr
// ---------------------------------------------------------------------------

namespace {

struct RegionStats {
  double mean = 0, var = 0;
  int used = 0;
};

RegionStats region_stats(const GhostImage& img, const std::vector<int>& cells) {
  std::vector<double> v;
  v.reserve(cells.size());
  for (int c : cells)
    if (!img.flags[c]) v.push_back(img.values[c]);
  RegionStats s;
  s.used = static_cast<int>(v.size());
  if (s.used < 2)
    throw std::invalid_argument(
        "empirical_snr: region needs at least 2 usable cells");
  s.mean = mean_of(v);
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - s.mean;
    sq[i] = d * d;
  }
  s.var = pairwise_sum(sq) / static_cast<double>(s.used - 1);
  return s;
}

}  // namespace

SnrReport empirical_snr(const GhostImage& image, const MaskSpec& mask) {
  mask.validate();
  if (mask.rows != image.rows || mask.cols != image.cols)
    throw std::invalid_argument("empirical_snr: mask grid not congruent");
  const RegionStats in = region_stats(image, mask.in_cells());
  const RegionStats out = region_stats(image, mask.out_cells());

  SnrReport r;
  r.in_cells_used = in.used;
  r.out_cells_used = out.used;
  r.contrast = std::fabs(in.mean - out.mean);
  r.noise = std::sqrt(in.var + out.var);
  if (r.noise == 0) {
    r.degenerate = true;
    r.snr = 0;
  } else {
    r.snr = r.contrast / r.noise;
  }
  return r;
}

// ---------------------------------------------------------------------------
// empirical_moments
// ---------------------------------------------------------------------------

namespace {

struct StreamingMoments {
  long double sum[5][5]{};
  long double sumsq[5][5]{};

  MomentEstimate finish(long n) const {
    MomentEstimate e;
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; p + q <= 4; ++q) {
        const long double mean = sum[p][q] / n;
        const long double var =
            std::max<long double>(sumsq[p][q] / n - mean * mean, 0.0L) ;
        e.value[p][q] = static_cast<double>(mean);
        e.se[p][q] = static_cast<double>(std::sqrt(var / (n - 1)));
      }
    return e;
  }
};

}  // namespace

EmpiricalMoments empirical_moments(const FrameStack& stack) {
  if (stack.frames < 100)
    throw std::invalid_argument("empirical_moments: needs at least 100 frames");
  const int cells = stack.cell_count();
  const std::vector<int> in = stack.mask.in_cells();
  const std::vector<int> out = stack.mask.out_cells();

  StreamingMoments pixel, b_in, b_out;
  // Per-frame statistics are averaged over cells first, then treated as one
  // iid sample per frame; the pixel pair averages over every grid cell (all
  // cells carry identically distributed correlated pairs).
  for (long k = 0; k < stack.frames; ++k) {
    long double px[5][5]{};
    for (int c = 0; c < cells; ++c) {
      const double o = stack.obj(k, c), r = stack.ref(k, c);
      long double op[5], rq[5];
      op[0] = rq[0] = 1.0L;
      for (int i = 1; i <= 4; ++i) {
        op[i] = op[i - 1] * o;
        rq[i] = rq[i - 1] * r;
      }
      for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q) px[p][q] += op[p] * rq[q];
    }
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; p + q <= 4; ++q) {
        const long double v = px[p][q] / cells;
        pixel.sum[p][q] += v;
        pixel.sumsq[p][q] += v * v;
      }

    long double ref_in[5]{}, ref_out[5]{};
    auto add_ref_powers = [&stack, k](const std::vector<int>& region,
                                      long double acc[5]) {
      for (int c : region) {
        const double r = stack.ref(k, c);
        long double rq = 1.0L;
        for (int q = 0; q <= 4; ++q) {
          acc[q] += rq;
          rq *= r;
        }
      }
      for (int q = 0; q <= 4; ++q) acc[q] /= region.size();
    };
    add_ref_powers(in, ref_in);
    add_ref_powers(out, ref_out);

    const double b = stack.bucket(k, stack.mask);
    long double bpow[5];
    bpow[0] = 1.0L;
    for (int i = 1; i <= 4; ++i) bpow[i] = bpow[i - 1] * b;
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; p + q <= 4; ++q) {
        const long double vi = bpow[p] * ref_in[q];
        b_in.sum[p][q] += vi;
        b_in.sumsq[p][q] += vi * vi;
        const long double vo = bpow[p] * ref_out[q];
        b_out.sum[p][q] += vo;
        b_out.sumsq[p][q] += vo * vo;
      }
  }

  EmpiricalMoments m;
  m.frames = stack.frames;
  m.pixel = pixel.finish(stack.frames);
  m.bucket_in = b_in.finish(stack.frames);
  m.bucket_out = b_out.finish(stack.frames);
  return m;
}

}  // namespace gi
