#include "probekit/systems.hpp"

#include <cmath>

#include "probekit/error.hpp"

namespace probekit {

RationalPolygon octagon_toric() {
  std::vector<Point> v = {
      {Rational(1), Rational(0)}, {Rational(2), Rational(0)}, {Rational(3), Rational(1)},
      {Rational(3), Rational(2)}, {Rational(2), Rational(3)}, {Rational(1), Rational(3)},
      {Rational(0), Rational(2)}, {Rational(0), Rational(1)}};
  return RationalPolygon::from_vertices(std::move(v));
}

SolveInput octagon_solve_input(const Rational& h) {
  SolveInput in;
  in.x_left = Rational(0);
  in.x_right = Rational(3);
  in.left_edge_length = Rational(1);
  in.right_edge_length = Rational(1);
  in.anchor = {Rational(0), Rational(1)};
  in.bottom_slope_first = Rational(-1);
  in.width_slope_first = Rational(2);
  if (h == Rational(3, 2)) {
    in.stations.push_back({Rational(1), {{-1, 2, h}}, std::nullopt, std::nullopt});
    in.stations.push_back({Rational(2), {{+1, 2, h}}, std::nullopt, std::nullopt});
  } else {
    in.stations.push_back(
        {Rational(1), {{-1, 1, h}, {+1, 1, Rational(3) - h}}, std::nullopt, std::nullopt});
    in.stations.push_back(
        {Rational(2), {{-1, 1, h}, {+1, 1, Rational(3) - h}}, std::nullopt, std::nullopt});
  }
  return in;
}

SemitoricPolygon octagon_semitoric(const OctagonParams& params, const std::vector<int>& eps) {
  if (params.h <= Rational(0) || params.h > Rational(3, 2))
    throw Error(Errc::OutOfRange, "octagon node height must be in (0, 3/2]");
  const size_t expected = params.merged() ? 2 : 4;
  if (eps.size() != expected)
    throw Error(Errc::InvalidArgument, "cut sign vector length does not match the node count");
  SemitoricPolygon sp = solve_representative(octagon_solve_input(params.h)).sp;
  // Canonical signs: (-1,+1,-1,+1), or (-1,+1) when merged. Flip differing nodes.
  for (size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] != 1 && eps[i] != -1)
      throw Error(Errc::InvalidArgument, "cut signs must be +1 or -1");
    if (eps[i] != sp.nodes[i].epsilon) sp = mutate(sp, i);
  }
  return sp;
}

Fact octagon_superheavy_fact() {
  Fact f;
  f.kind = FactKind::SuperheavyPoint;
  f.points = {{Rational(1), Rational(1)},
              {Rational(2), Rational(1)},
              {Rational(3, 2), Rational(3, 2)},
              {Rational(1), Rational(2)},
              {Rational(2), Rational(2)}};
  f.citation = "external: quasi-state superheavy fibers of the octagon system";
  return f;
}

double kepler_height(const Rational& t) {
  if (t <= Rational(1, 5) || t >= Rational(1))
    throw Error(Errc::OutOfRange, "Kepler parameter must satisfy 1/5 < t < 1");
  double td = t.to_double();
  double v = std::atanh((1.0 - 3.0 * td) / (2.0 * td));
  double sech = 1.0 / std::cosh(v);
  return 2.0 - (2.0 / M_PI) * (2.0 * std::atan(std::exp(-v)) - sech);
}

double kepler_t0() {
  double lo = 0.5, hi = 1.0 - 1e-9;
  double flo = kepler_height(Rational::from_double(lo, 1e-15)) - 1.0;
  double fhi = kepler_height(Rational::from_double(hi, 1e-15)) - 1.0;
  if (flo <= 0 || fhi >= 0) throw Error(Errc::SolveFailed, "height crossing not bracketed");
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    double f = kepler_height(Rational::from_double(mid, 1e-16)) - 1.0;
    if (f > 0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

SolveInput kepler_solve_input(const Rational& R, const Rational& h) {
  SolveInput in;
  in.x_left = Rational(-2) * R;
  in.x_right = Rational(2) * R;
  in.left_edge_length = Rational(0);
  in.right_edge_length = Rational(0);
  in.anchor = {Rational(-2) * R, -h};
  in.bottom_slope_first = Rational(0);
  in.width_slope_first = Rational(1);
  SolveStation st;
  st.x = Rational(0);
  st.nodes = {{-1, 1, h}};
  st.bottom_vertex = SolveWeights{-1, 1};  // elliptic vertex underneath the cut end
  in.stations.push_back(st);
  return in;
}

KeplerSystem kepler_from_h(const Rational& R, const Rational& h) {
  if (R <= Rational(0)) throw Error(Errc::OutOfRange, "radius must be positive");
  if (h <= Rational(0) || h >= Rational(2) * R)
    throw Error(Errc::OutOfRange, "height must lie in (0, 2R)");
  KeplerSystem sys;
  sys.R = R;
  sys.h = h;
  sys.rep_minus = solve_representative(kepler_solve_input(R, h)).sp;
  sys.rep_plus = mutate(sys.rep_minus, 0);
  // A composed with the vertical translation by h - 2R.
  Rational c = Rational(2) * R - h;
  sys.to_square = AffineMap({0, -1, 1, -1}, Point{c, c});
  return sys;
}

KeplerSystem kepler(const KeplerParams& params) {
  if (params.R <= Rational(0)) throw Error(Errc::OutOfRange, "radius must be positive");
  double h_tilde = kepler_height(params.t);
  double h_float = params.R.to_double() * h_tilde;
  Rational h = Rational::from_double(h_float, params.precision);
  KeplerSystem sys = kepler_from_h(params.R, h);
  sys.h_float = h_float;
  sys.precision = params.precision;
  return sys;
}

CamSystem coupled_angular_momenta(const CamParams& params) {
  const Rational &R1 = params.R1, &R2 = params.R2;
  if (R1 <= Rational(0) || R2 <= Rational(0))
    throw Error(Errc::OutOfRange, "radii must be positive");
  if (R1 == R2)
    throw Error(Errc::InvalidArgument, "equal radii: use the Kepler generator");
  if (R1 > R2)
    throw Error(Errc::InvalidArgument, "requires R1 < R2");
  {
    double r1 = R1.to_double(), r2 = R2.to_double();
    double root = 2.0 * std::sqrt(r1 * r2);
    double t_minus = r2 / (2.0 * r2 + r1 + root);
    double t_plus = r2 / (2.0 * r2 + r1 - root);
    double t = params.t.to_double();
    if (t <= t_minus || t >= t_plus)
      throw Error(Errc::OutOfRange, "no focus-focus point for this coupling parameter");
  }
  Rational h1 = params.h1 ? *params.h1 : R1 / Rational(2);
  if (h1 <= Rational(0) || h1 >= Rational(2) * R1)
    throw Error(Errc::OutOfRange, "height invariant must lie in (0, 2R1)");

  const Rational x0 = R2 - R1;
  const Rational xL = R2 - Rational(3) * R1;
  const Rational xe = Rational(3) * (R2 - R1);
  const Rational xR = Rational(3) * R2 - R1;
  const Rational ybot = -h1;
  const Rational ytop = Rational(2) * R1 - h1;
  RationalPolygon poly = RationalPolygon::from_vertices(
      {{xL, ybot}, {xe, ybot}, {xR, ytop}, {x0, ytop}});

  Node node;
  node.position = {x0, Rational(0)};
  node.epsilon = +1;
  node.multiplicity = 1;

  CamSystem sys;
  sys.rep = make_semitoric(poly, {node});
  sys.h1 = h1;
  sys.distinguished = {x0, R1 - h1};
  sys.symmetry.kind = FactKind::Symmetry;
  sys.symmetry.line_x = x0;
  sys.symmetry.citation =
      "external: Hamiltonian involution reversing the first momentum coordinate";
  return sys;
}

SemitoricPolygon spin_oscillator(const SpinParams& params) {
  const Rational& r1 = params.rho1;
  if (r1 <= Rational(0) || params.rho2 <= Rational(0))
    throw Error(Errc::OutOfRange, "scales must be positive");
  if (params.lower_slope >= Rational(0))
    throw Error(Errc::InvalidArgument, "lower facet slope must be negative");
  // y >= s*(x + rho1) with s = -p/q: q*y + p*x >= -p*rho1.
  mpz_class pz = -params.lower_slope.numerator();
  mpz_class qz = params.lower_slope.denominator();
  if (!pz.fits_slong_p() || !qz.fits_slong_p())
    throw Error(Errc::OutOfRange, "lower slope exceeds machine range");
  long long p = pz.get_si(), q = qz.get_si();
  std::vector<HalfPlane> hps = {
      {{1, -1}, -r1},                      // y <= x + rho1
      {{0, -1}, -r1},                      // y <= rho1
      {{p, q}, Rational(-p) * r1},         // lower facet
  };
  RationalPolygon poly = RationalPolygon::from_halfplanes(hps);
  Node node;
  node.position = {Rational(0), Rational(0)};
  node.epsilon = +1;
  node.multiplicity = 1;
  return make_semitoric(poly, {node});
}

}  // namespace probekit
