#include "polarsweep/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace polarsweep {

namespace {

constexpr double kPi = std::numbers::pi;

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

int prime(int i) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  if (i < 20) return primes[i];
  throw validation_error("halton: too many dimensions");
}

// Grid nodes in [0,1]^k; periodic directions drop the duplicate endpoint.
std::vector<Vec> grid_params(const std::vector<int>& resolution,
                             const std::vector<bool>& periodic) {
  const int k = static_cast<int>(resolution.size());
  std::vector<Vec> out;
  std::vector<int> idx(k, 0);
  while (true) {
    Vec t(k);
    for (int i = 0; i < k; ++i) {
      int denom = periodic[i] ? resolution[i] : std::max(1, resolution[i] - 1);
      t[i] = static_cast<double>(idx[i]) / denom;
    }
    out.push_back(t);
    int dim = 0;
    while (dim < k) {
      if (++idx[dim] < resolution[dim]) break;
      idx[dim] = 0;
      ++dim;
    }
    if (dim == k) break;
  }
  return out;
}

Mat chart_differential(const std::function<Vec(const Vec&)>& chart,
                       const Vec& t, double h) {
  Vec f0 = chart(t);
  Mat J(f0.size(), t.size());
  for (int i = 0; i < t.size(); ++i) {
    Vec tp = t, tm = t;
    tp[i] += h;
    tm[i] -= h;
    J.col(i) = (chart(tp) - chart(tm)) / (2.0 * h);
  }
  return J;
}

// For each query column, the distance to the nearest column of set.
// Blocked |q-s|^2 = |q|^2 + |s|^2 - 2<q,s> evaluation.
Vec min_set_distances(const Mat& queries, const Mat& set) {
  const int N = static_cast<int>(set.cols());
  const int Q = static_cast<int>(queries.cols());
  Eigen::RowVectorXd set_sq = set.colwise().squaredNorm();
  Vec out(Q);
  const int block = 256;
  for (int q0 = 0; q0 < Q; q0 += block) {
    int qn = std::min(block, Q - q0);
    Mat cross = set.transpose() * queries.middleCols(q0, qn);  // N x qn
    Eigen::RowVectorXd q_sq =
        queries.middleCols(q0, qn).colwise().squaredNorm();
    for (int j = 0; j < qn; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < N; ++i)
        best = std::min(best, set_sq[i] + q_sq[j] - 2.0 * cross(i, j));
      out[q0 + j] = std::sqrt(std::max(0.0, best));
    }
  }
  return out;
}

Mat random_group_element(const LinearAction& action, std::mt19937_64& rng) {
  const auto& algebra = action.algebra_basis();
  std::uniform_real_distribution<double> coef(-kPi * std::sqrt(2.0),
                                              kPi * std::sqrt(2.0));
  Mat A = Mat::Zero(action.ambient_dim(), action.ambient_dim());
  for (const Mat& B : algebra) A += coef(rng) * B;
  return exp_skew(A, 1.0);
}

double probe_statistic(const SweptHypersurface& M, int trials,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Mat g = random_group_element(M.action, rng);
    Vec d = min_set_distances(g * M.points, M.points);
    worst = std::max(worst, d.maxCoeff());
  }
  return worst;
}

// Distance from x to the polyline through the ordered samples (curve
// profiles); plain nearest sample otherwise.
double profile_set_distance(const ProfileHypersurface& L, const Vec& x) {
  const int N = L.num_samples();
  int best_i = 0;
  double best = (L.samples.col(0) - x).norm();
  for (int i = 1; i < N; ++i) {
    double d = (L.samples.col(i) - x).norm();
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  if (L.param_dim != 1) return best;
  auto segment_dist = [&](int a, int b) {
    Vec pa = L.samples.col(a), ab = L.samples.col(b) - L.samples.col(a);
    double len2 = ab.squaredNorm();
    if (len2 < 1e-30) return (x - pa).norm();
    double s = std::clamp((x - pa).dot(ab) / len2, 0.0, 1.0);
    return (x - (pa + s * ab)).norm();
  };
  for (int nb : {best_i - 1, best_i + 1}) {
    int j = nb;
    if (j < 0) j = L.closed ? N - 1 : -1;
    if (j >= N) j = L.closed ? 0 : -1;
    if (j < 0) continue;
    best = std::min(best, segment_dist(std::min(best_i, j) == best_i ? best_i : j,
                                        std::min(best_i, j) == best_i ? j : best_i));
  }
  return best;
}

}  // namespace

ProfileHypersurface make_profile(SectionSubspace section,
                                 std::function<Vec(const Vec&)> chart,
                                 int param_dim, std::vector<int> resolution,
                                 std::vector<bool> periodic, double fd_step,
                                 double min_sv) {
  if (static_cast<int>(resolution.size()) != param_dim ||
      static_cast<int>(periodic.size()) != param_dim)
    throw validation_error("make_profile: resolution/periodic size mismatch");
  if (param_dim != section.frame.rank() - 1)
    throw validation_error(
        "make_profile: parameter dimension must be rank(section) - 1");

  ProfileHypersurface L;
  L.section = std::move(section);
  L.chart = std::move(chart);
  L.param_dim = param_dim;
  L.resolution = std::move(resolution);
  L.periodic = std::move(periodic);
  L.closed = true;
  for (bool p : L.periodic) L.closed = L.closed && p;

  auto params = grid_params(L.resolution, L.periodic);
  L.samples.resize(L.section.frame.rank(), static_cast<int>(params.size()));
  for (size_t i = 0; i < params.size(); ++i) {
    Vec x = L.chart(params[i]);
    if (x.size() != L.section.frame.rank())
      throw validation_error("make_profile: chart value dimension mismatch");
    L.samples.col(static_cast<int>(i)) = x;
    Mat J = chart_differential(L.chart, params[i], fd_step);
    Eigen::JacobiSVD<Mat> svd(J);
    if (svd.singularValues().minCoeff() < min_sv)
      throw validation_error("make_profile: chart is not an immersion at node " +
                             std::to_string(i));
    L.sample_tangents.push_back(J);
    L.sample_params.push_back(params[i]);
  }
  return L;
}

ProfileHypersurface make_circle_profile(SectionSubspace section, Vec center,
                                        double radius, int resolution) {
  if (section.frame.rank() != 2)
    throw validation_error("make_circle_profile: section must be 2-dimensional");
  auto chart = [center, radius](const Vec& t) {
    Vec x(2);
    x[0] = center[0] + radius * std::cos(2.0 * kPi * t[0]);
    x[1] = center[1] + radius * std::sin(2.0 * kPi * t[0]);
    return x;
  };
  return make_profile(std::move(section), chart, 1, {resolution}, {true});
}

InvarianceReport check_weyl_invariance(const ProfileHypersurface& L,
                                       const WeylGroupRep& W, double tol) {
  double worst = 0.0;
  double closest = std::numeric_limits<double>::infinity();
  bool nontrivial = false;
  for (const auto& w : W.elements) {
    if (w.distance(AffineIsometry{Mat::Identity(w.lin.rows(), w.lin.cols()),
                                  Vec::Zero(w.trans.size())}) < 1e-12)
      continue;
    nontrivial = true;
    double w_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < L.num_samples(); ++i) {
      Vec image = w.apply(L.samples.col(i));
      double d = profile_set_distance(L, image);
      worst = std::max(worst, d);
      w_min = std::min(w_min, d);
    }
    closest = std::min(closest, w_min);
  }
  if (!nontrivial) closest = 0.0;

  // spacing: largest gap between consecutive samples, a lower bound on
  // what the sampling can resolve
  double spacing = 0.0;
  for (int i = 0; i + 1 < L.num_samples(); ++i)
    spacing = std::max(spacing,
                       (L.samples.col(i + 1) - L.samples.col(i)).norm());

  InvarianceReport report;
  report.max_deviation = worst;
  report.min_separation = closest;
  report.tol = tol;
  report.invariant = worst < tol;
  report.disjoint_orbit = !report.invariant && closest > 2.0 * spacing;
  return report;
}

std::vector<Mat> sample_group_elements(const LinearAction& action,
                                       std::uint64_t seed, int count) {
  const int d = action.ambient_dim();
  std::vector<Mat> out;
  out.push_back(Mat::Identity(d, d));
  for (const Mat& A : action.generators()) {
    if (static_cast<int>(out.size()) >= count) break;
    out.push_back(exp_skew(A / std::max(1.0, A.norm() / std::sqrt(2.0)), kPi));
  }
  const auto& algebra = action.algebra_basis();
  std::uint64_t offset = 17 + (seed % 1024) * 101;
  std::uint64_t i = 0;
  while (static_cast<int>(out.size()) < count) {
    Mat A = Mat::Zero(d, d);
    for (size_t j = 0; j < algebra.size(); ++j) {
      double c =
          (2.0 * halton(offset + i, prime(static_cast<int>(j))) - 1.0) * kPi *
          std::sqrt(2.0);
      A += c * algebra[j];
    }
    out.push_back(exp_skew(A, 1.0));
    ++i;
  }
  return out;
}

SweptHypersurface sweep(const LinearAction& action,
                        const ProfileHypersurface& L, std::uint64_t seed,
                        int group_count) {
  const int d = action.ambient_dim();
  const int n = d - 1;
  SweptHypersurface M{action, {}, {}, Mat(), 0.0, seed, L.num_samples()};
  M.group_elements = sample_group_elements(action, seed, group_count);

  const int max_dim = max_orbit_dimension(action, seed);
  const Mat section_basis = L.section.frame.basis;

  std::vector<Mat> ambient_tangents;
  for (int i = 0; i < L.num_samples(); ++i)
    ambient_tangents.push_back(section_basis * L.sample_tangents[i]);

  M.points.resize(d, static_cast<int>(M.group_elements.size()) * L.num_samples());
  int col = 0;
  for (size_t gi = 0; gi < M.group_elements.size(); ++gi) {
    const Mat& g = M.group_elements[gi];
    for (int pi = 0; pi < L.num_samples(); ++pi) {
      Vec point = g * (section_basis * L.samples.col(pi));
      SweptSample s;
      s.point = point;
      s.group_tag = static_cast<int>(gi);
      s.profile_tag = pi;

      const auto& algebra = action.algebra_basis();
      Mat cols(d, L.param_dim + static_cast<int>(algebra.size()));
      cols.leftCols(L.param_dim) = g * ambient_tangents[pi];
      for (size_t a = 0; a < algebra.size(); ++a)
        cols.col(L.param_dim + static_cast<int>(a)) = algebra[a] * point;
      Frame tangent = orthonormalize(cols, 1e-8);
      if (tangent.rank() < n) {
        if (orbit_dimension(action, point) < max_dim) {
          // singular orbit (axis point): kept without frame data
          s.frame_valid = false;
        } else {
          throw validation_error(
              "sweep: tangent assembly rank deficient at regular sample (group " +
              std::to_string(gi) + ", profile " + std::to_string(pi) +
              "): profile tangent to an orbit direction");
        }
      } else {
        s.tangent = tangent;
        s.unit_normal = complement(tangent).basis.col(0);
      }
      M.points.col(col++) = point;
      M.samples.push_back(std::move(s));
    }
  }
  M.resolution_estimate = covering_resolution(M, 50, seed ^ 0x5bd1e995u);
  return M;
}

double equivariance_check(const SweptHypersurface& M, int trials,
                          std::uint64_t seed) {
  return probe_statistic(M, trials, seed);
}

double covering_resolution(const SweptHypersurface& M, int trials,
                           std::uint64_t seed) {
  return probe_statistic(M, trials, seed);
}

TransversalityReport transversality_check(const SectionSubspace& section,
                                          const SweptHypersurface& M,
                                          double tol) {
  TransversalityReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : M.samples) {
    if (!s.frame_valid) continue;
    Vec off = s.point - project(s.point, section.frame);
    if (off.norm() > tol) continue;
    ++report.intersection_samples;
    // margin: largest component of a section direction outside T_pM
    double margin = 0.0;
    for (int b = 0; b < section.frame.rank(); ++b) {
      Vec v = section.frame.basis.col(b);
      margin = std::max(margin, (v - project(v, s.tangent)).norm());
    }
    report.min_margin = std::min(report.min_margin, margin);
    if (margin <= tol) ++report.failures;
  }
  if (report.intersection_samples == 0) report.min_margin = 0.0;
  report.transversal =
      report.intersection_samples > 0 && report.failures == 0;
  return report;
}

SmoothnessReport boundary_smoothness_check(
    const std::function<double(double)>& f, int order, double h, double tol,
    bool two_sided) {
  if (order < 1) throw validation_error("boundary_smoothness_check: order < 1");
  const int degree = order + 2;
  const int half = order + 4;
  std::vector<double> nodes;
  if (two_sided) {
    for (int j = -half; j <= half; ++j) nodes.push_back(j * h);
  } else {
    for (int j = 0; j <= 2 * half; ++j) nodes.push_back(j * h);
  }
  const double window = half * h * (two_sided ? 1.0 : 2.0);

  // Least-squares polynomial in the window-scaled variable; the
  // coefficient b_j is the contribution of derivative j at the window
  // scale, which makes the pass test scale-free.
  Mat V(static_cast<int>(nodes.size()), degree + 1);
  Vec y(static_cast<int>(nodes.size()));
  for (size_t r = 0; r < nodes.size(); ++r) {
    double s = nodes[r] / window;
    double pw = 1.0;
    for (int j = 0; j <= degree; ++j) {
      V(static_cast<int>(r), j) = pw;
      pw *= s;
    }
    y[static_cast<int>(r)] = f(nodes[r]);
  }
  Vec b = V.colPivHouseholderQr().solve(y);

  double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  SmoothnessReport report;
  double factorial = 1.0;
  for (int j = 1; j <= order; ++j) {
    factorial *= j;
    if (j % 2 == 0) continue;
    double deriv = b[j] * factorial / std::pow(window, j);
    double scaled = std::abs(b[j]);
    bool pass = scaled <= tol * scale;
    report.odd_derivatives.push_back(OddDerivativeEstimate{j, deriv, scaled, pass});
    report.pass = report.pass && pass;
  }
  return report;
}

namespace {

// Axis-crossing evenness gate for curve profiles in a 2D section with
// coordinates (wall, distance). Throws smoothness_error on failure.
void axis_evenness_gate(const ProfileHypersurface& L, double axis_tol,
                        double tol) {
  if (L.param_dim != 1 || L.section.frame.rank() != 2) return;
  auto dist_of = [&](double t) {
    Vec tv(1);
    tv[0] = t;
    return L.chart(tv)[1];
  };
  auto wall_of = [&](double t) {
    Vec tv(1);
    tv[0] = t;
    return L.chart(tv)[0];
  };
  double scale = 0.0;
  for (int i = 0; i < L.num_samples(); ++i)
    scale = std::max(scale, L.samples.col(i).norm());
  if (scale < 1e-12) scale = 1.0;

  const int N = L.num_samples();
  std::vector<double> crossings;
  for (int i = 0; i < N; ++i) {
    double di = L.samples(1, i);
    if (std::abs(di) < axis_tol * scale) {
      crossings.push_back(L.sample_params[i][0]);
      continue;
    }
    int j = (i + 1) % N;
    if (!L.closed && j == 0) break;
    double ti = L.sample_params[i][0];
    double tj = (!L.closed || j != 0) ? L.sample_params[j][0] : 1.0;
    double dj = L.samples(1, j);
    if (di * dj < 0.0) {
      // bisection refine
      double a = ti, b = tj, da = di;
      for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (a + b), dm = dist_of(m);
        if (da * dm <= 0.0)
          b = m;
        else {
          a = m;
          da = dm;
        }
      }
      crossings.push_back(0.5 * (a + b));
    }
  }
  if (crossings.empty()) return;

  for (double tstar : crossings) {
    double ht = 1e-6;
    double dprime = (dist_of(tstar + ht) - dist_of(tstar - ht)) / (2.0 * ht);
    if (std::abs(dprime) < 1e-6 * scale)
      throw validation_error(
          "axis gate: graph extraction failed (profile tangent along the axis)");
    double z0 = wall_of(tstar);
    double hu = 0.02 * scale;
    auto graph = [&](double u) {
      // solve dist(t) = u near tstar
      double t = tstar + u / dprime;
      for (int it = 0; it < 60; ++it) {
        double g = dist_of(t) - u;
        if (std::abs(g) < 1e-13 * scale) break;
        double gp = (dist_of(t + ht) - dist_of(t - ht)) / (2.0 * ht);
        if (std::abs(gp) < 1e-10) break;
        t -= g / gp;
      }
      return wall_of(t) - z0;
    };
    SmoothnessReport rep = boundary_smoothness_check(graph, 5, hu, tol, true);
    if (!rep.pass) {
      int bad = 0;
      for (const auto& od : rep.odd_derivatives)
        if (!od.pass) {
          bad = od.order;
          break;
        }
      throw smoothness_error(
          "profile graph at axis crossing is not even: odd derivative of order " +
          std::to_string(bad) + " does not vanish");
    }
  }
}

WeylGroupRep axis_reflection_group(int section_rank) {
  Mat refl = Mat::Identity(section_rank, section_rank);
  refl(section_rank - 1, section_rank - 1) = -1.0;
  WeylGroupRep W;
  W.section_frame = Frame{Mat::Identity(section_rank, section_rank)};
  W.generators.push_back(AffineIsometry{refl, Vec::Zero(section_rank)});
  W.elements.push_back(
      AffineIsometry{Mat::Identity(section_rank, section_rank), Vec::Zero(section_rank)});
  W.elements.push_back(W.generators.front());
  return W;
}

}  // namespace

RotationResult rotation_hypersurface(int k, int n,
                                     std::function<Vec(const Vec&)> profile,
                                     int profile_param_dim,
                                     std::vector<int> resolution,
                                     std::vector<bool> periodic,
                                     std::uint64_t seed, int group_count,
                                     double weyl_tol, double axis_tol) {
  if (k < 1 || k > n - 1)
    throw validation_error("rotation_hypersurface: need 1 <= k <= n-1");
  const int d = n + 1;
  LinearAction action = actions::axis_block(d, k);

  Mat basis = Mat::Zero(d, k + 1);
  basis.topLeftCorner(k, k).setIdentity();
  basis(k, k) = 1.0;  // distance coordinate along e_{k+1}

  // basepoint: any profile point away from the axis
  ProfileHypersurface L;
  {
    SectionSubspace provisional{Frame{basis}, Vec::Zero(d)};
    L = make_profile(provisional, std::move(profile), profile_param_dim,
                     std::move(resolution), std::move(periodic));
    int best = 0;
    for (int i = 1; i < L.num_samples(); ++i)
      if (std::abs(L.samples(k, i)) > std::abs(L.samples(k, best))) best = i;
    L.section.basepoint = basis * L.samples.col(best);
  }

  WeylGroupRep W = axis_reflection_group(k + 1);
  InvarianceReport inv = check_weyl_invariance(L, W, weyl_tol);
  // A profile confined to the closed chamber (axis distance >= 0) is a
  // fundamental-domain representative: its sweep equals the sweep of
  // the full Weyl orbit, so it need not be symmetric itself.
  double scale = std::max(1.0, L.samples.cwiseAbs().maxCoeff());
  bool in_chamber = L.samples.row(k).minCoeff() > -weyl_tol * scale;
  if (!inv.invariant && !in_chamber)
    throw weyl_invariance_error(
        "rotation_hypersurface: profile is neither symmetric about the axis "
        "nor confined to one side of it (deviation " +
            std::to_string(inv.max_deviation) + ")",
        inv.max_deviation);

  // even-graph gate at axis crossings (curve profiles)
  if (profile_param_dim == 1 && k == 1) axis_evenness_gate(L, axis_tol, 1e-5);

  SweptHypersurface M = sweep(action, L, seed, group_count);
  return RotationResult{std::move(action), std::move(M), std::move(L)};
}

RotationResult multi_rotational(const std::vector<int>& block_dims,
                                const std::vector<double>& radii,
                                std::function<Vec(const Vec&)> profile,
                                int profile_param_dim,
                                std::vector<int> resolution,
                                std::vector<bool> periodic, std::uint64_t seed,
                                int group_count, double weyl_tol) {
  if (block_dims.size() < 2)
    throw validation_error("multi_rotational: need at least one rotating block");
  const int k = static_cast<int>(block_dims.size()) - 1;
  if (static_cast<int>(radii.size()) != k)
    throw validation_error("multi_rotational: radii count must match blocks");
  const int n0 = block_dims[0];
  int d = n0;
  for (int i = 1; i <= k; ++i) {
    if (block_dims[i] < 2)
      throw validation_error("multi_rotational: rotating blocks need dim >= 2");
    d += block_dims[i];
  }

  std::vector<Mat> gens;
  int off = n0;
  std::vector<int> block_first;
  for (int i = 1; i <= k; ++i) {
    block_first.push_back(off);
    for (int a = off; a < off + block_dims[i]; ++a)
      for (int b = a + 1; b < off + block_dims[i]; ++b) {
        Mat A = Mat::Zero(d, d);
        A(a, b) = -1.0;
        A(b, a) = 1.0;
        gens.push_back(A);
      }
    off += block_dims[i];
  }
  LinearAction action(d, std::move(gens), "multi-rotational");

  Mat basis = Mat::Zero(d, n0 + k);
  for (int i = 0; i < n0; ++i) basis(i, i) = 1.0;
  for (int i = 0; i < k; ++i) basis(block_first[i], n0 + i) = 1.0;

  auto scaled_chart = [profile = std::move(profile), radii, n0,
                       k](const Vec& t) {
    Vec x = profile(t);
    for (int i = 0; i < k; ++i) x[n0 + i] *= radii[i];
    return x;
  };

  SectionSubspace provisional{Frame{basis}, Vec::Zero(d)};
  ProfileHypersurface L =
      make_profile(provisional, scaled_chart, profile_param_dim,
                   std::move(resolution), std::move(periodic));
  {
    int best = 0;
    double best_score = -1.0;
    for (int i = 0; i < L.num_samples(); ++i) {
      double score = 1.0;
      for (int b = 0; b < k; ++b) score = std::min(score, std::abs(L.samples(n0 + b, i)));
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    L.section.basepoint = basis * L.samples.col(best);
  }

  // Weyl group: the 2^k sign flips of the block coordinates.
  WeylGroupRep W;
  const int r = n0 + k;
  W.section_frame = Frame{Mat::Identity(r, r)};
  for (int i = 0; i < k; ++i) {
    Mat refl = Mat::Identity(r, r);
    refl(n0 + i, n0 + i) = -1.0;
    W.generators.push_back(AffineIsometry{refl, Vec::Zero(r)});
  }
  for (int mask = 0; mask < (1 << k); ++mask) {
    Mat lin = Mat::Identity(r, r);
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) lin(n0 + i, n0 + i) = -1.0;
    W.elements.push_back(AffineIsometry{lin, Vec::Zero(r)});
  }

  InvarianceReport inv = check_weyl_invariance(L, W, weyl_tol);
  double scale = std::max(1.0, L.samples.cwiseAbs().maxCoeff());
  bool in_chamber = true;  // all block radii nonnegative
  for (int i = 0; i < k; ++i)
    in_chamber =
        in_chamber && L.samples.row(n0 + i).minCoeff() > -weyl_tol * scale;
  if (!inv.invariant && !in_chamber)
    throw weyl_invariance_error(
        "multi_rotational: profile is neither invariant under the block "
        "reflections nor confined to a closed chamber (deviation " +
            std::to_string(inv.max_deviation) + ")",
        inv.max_deviation);

  SweptHypersurface M = sweep(action, L, seed, group_count);
  return RotationResult{std::move(action), std::move(M), std::move(L)};
}

double warped_metric_eval(const WarpedProductSpec& spec, const Vec& u,
                          const Vec& u_prime, const Vec& v, const Vec& v_prime,
                          const Vec& base_point) {
  double r = spec.rho(base_point);
  return u.dot(u_prime) + r * r * v.dot(v_prime);
}

namespace {

// Unit-sphere chart S^m by nested angles, ambient R^(m+1).
Vec sphere_point(const Vec& phi) {
  const int m = static_cast<int>(phi.size());
  Vec w(m + 1);
  double s = 1.0;
  for (int i = 0; i < m; ++i) {
    w[i] = s * std::cos(phi[i]);
    s *= std::sin(phi[i]);
  }
  w[m] = s;
  return w;
}

}  // namespace

WarpedRealization warped_to_rotation(const WarpedProductSpec& spec,
                                     std::uint64_t seed, int group_count,
                                     double realizability_tol, double fd_step) {
  const int k = spec.base_dim;
  const int n = k + spec.fiber_dim;

  auto params = grid_params(spec.resolution, spec.periodic);
  for (const Vec& t : params) {
    Vec x = spec.base_chart(t);
    double dist = x[k];
    double rho = spec.rho(t);
    if (rho <= 0.0 && dist > realizability_tol)
      throw realizability_error("warped_to_rotation: rho must be positive");
    if (std::abs(dist - spec.fiber_radius_convention * rho) >
        realizability_tol * std::max(1.0, std::abs(dist)))
      throw realizability_error(
          "warped_to_rotation: axis distance does not match "
          "fiber_radius_convention * rho at a grid node");
  }

  RotationResult rot = rotation_hypersurface(
      k, n, spec.base_chart, spec.base_dim, spec.resolution, spec.periodic,
      seed, group_count);

  // Induced metric of the swept chart against the warped-product value.
  auto full_chart = [&](const Vec& t) {
    Vec tb = t.head(k);
    Vec phi = t.tail(spec.fiber_dim);
    Vec x = spec.base_chart(tb);
    Vec w = sphere_point(phi);
    Vec out(n + 1);
    out.head(k) = x.head(k);
    out.tail(spec.fiber_dim + 1) = x[k] * w;
    return out;
  };

  MetricMatchReport report;
  std::vector<Vec> base_nodes;
  for (size_t i = 0; i < params.size(); i += std::max<size_t>(1, params.size() / 5))
    base_nodes.push_back(params[i]);
  std::vector<Vec> fiber_nodes;
  for (double a : {0.6, 1.1, 1.9}) {
    Vec phi = Vec::Constant(spec.fiber_dim, a);
    fiber_nodes.push_back(phi);
  }

  for (const Vec& tb : base_nodes) {
    for (const Vec& phi : fiber_nodes) {
      Vec t(k + spec.fiber_dim);
      t.head(k) = tb;
      t.tail(spec.fiber_dim) = phi;
      Mat J = chart_differential(full_chart, t, fd_step);
      Mat G_fd = J.transpose() * J;

      Mat Jb = chart_differential(spec.base_chart, tb, fd_step);
      Mat Jf = chart_differential(sphere_point, phi, fd_step);
      const double conv = spec.fiber_radius_convention;
      Mat G_warp = Mat::Zero(k + spec.fiber_dim, k + spec.fiber_dim);
      G_warp.topLeftCorner(k, k) = Jb.transpose() * Jb;
      double rho = spec.rho(tb);
      G_warp.bottomRightCorner(spec.fiber_dim, spec.fiber_dim) =
          rho * rho * conv * conv * (Jf.transpose() * Jf);

      double scale = std::max(1.0, G_warp.cwiseAbs().maxCoeff());
      double err = (G_fd - G_warp).cwiseAbs().maxCoeff() / scale;
      report.max_relative_error = std::max(report.max_relative_error, err);
      ++report.nodes_checked;
    }
  }
  report.pass = report.max_relative_error < 1e-3;
  return WarpedRealization{std::move(rot), report};
}

}  // namespace polarsweep
