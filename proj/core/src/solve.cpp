#include "probekit/solve.hpp"

#include <string>

#include "probekit/error.hpp"

namespace probekit {

namespace {

// Dense exact Gaussian elimination for A x = b. Throws SolveFailed unless the
// solution is unique.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> A,
                                   std::vector<Rational> b, size_t n_unknowns) {
  size_t rows = A.size();
  size_t rank = 0;
  for (size_t col = 0; col < n_unknowns && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && A[pivot][col] == Rational(0)) pivot++;
    if (pivot == rows) continue;
    std::swap(A[pivot], A[rank]);
    std::swap(b[pivot], b[rank]);
    Rational p = A[rank][col];
    for (size_t c = col; c < n_unknowns; ++c) A[rank][c] /= p;
    b[rank] /= p;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || A[r][col] == Rational(0)) continue;
      Rational f = A[r][col];
      for (size_t c = col; c < n_unknowns; ++c) A[r][c] -= f * A[rank][c];
      b[r] -= f * b[rank];
    }
    rank++;
  }
  for (size_t r = rank; r < rows; ++r) {
    if (b[r] != Rational(0))
      throw Error(Errc::SolveFailed,
                  "inconsistent slope system (rank " + std::to_string(rank) + ")");
  }
  if (rank < n_unknowns)
    throw Error(Errc::SolveFailed, "underdetermined slope system (rank " +
                                       std::to_string(rank) + " of " +
                                       std::to_string(n_unknowns) + ")");
  std::vector<Rational> x(n_unknowns);
  // After full elimination the first n_unknowns rows hold the identity.
  for (size_t r = 0; r < rank; ++r) {
    for (size_t c = 0; c < n_unknowns; ++c) {
      if (A[r][c] == Rational(1)) { x[c] = b[r]; break; }
    }
  }
  return x;
}

}  // namespace

SolveResult solve_representative(const SolveInput& in) {
  const size_t m = in.stations.size();
  if (in.x_left >= in.x_right) throw Error(Errc::SolveFailed, "empty x range");
  for (size_t j = 0; j < m; ++j) {
    if (in.stations[j].x <= in.x_left || in.stations[j].x >= in.x_right)
      throw Error(Errc::SolveFailed, "station outside the open x range");
    if (j > 0 && in.stations[j].x <= in.stations[j - 1].x)
      throw Error(Errc::SolveFailed, "stations must be strictly increasing");
  }
  if (in.left_edge_length < Rational(0) || in.right_edge_length < Rational(0))
    throw Error(Errc::SolveFailed, "negative vertical edge length");

  // Unknowns: top slope t_j and bottom slope b_j per interval j = 0..m.
  const size_t n_int = m + 1;
  const size_t n_unknowns = 2 * n_int;
  auto t_idx = [&](size_t j) { return j; };
  auto b_idx = [&](size_t j) { return n_int + j; };

  std::vector<std::vector<Rational>> A;
  std::vector<Rational> rhs;
  auto add_row = [&]() -> std::vector<Rational>& {
    A.emplace_back(n_unknowns, Rational(0));
    rhs.emplace_back(0);
    return A.back();
  };

  {
    auto& r = add_row();
    r[b_idx(0)] = Rational(1);
    rhs.back() = in.bottom_slope_first;
  }
  {
    auto& r = add_row();
    r[t_idx(0)] = Rational(1);
    r[b_idx(0)] = Rational(-1);
    rhs.back() = in.width_slope_first;
  }
  for (size_t j = 0; j < m; ++j) {
    const SolveStation& st = in.stations[j];
    long long k_up = 0, k_down = 0, k_total = 0;
    for (const SolveNode& n : st.nodes) {
      if (n.epsilon != 1 && n.epsilon != -1)
        throw Error(Errc::SolveFailed, "node cut sign must be +1 or -1");
      if (n.epsilon > 0) k_up += n.k; else k_down += n.k;
      k_total += n.k;
    }
    if (!st.top_vertex) {
      // Monodromy of the top chain: slope drops by the upward decoration.
      auto& r = add_row();
      r[t_idx(j + 1)] = Rational(1);
      r[t_idx(j)] = Rational(-1);
      rhs.back() = Rational(-k_up);
    }
    if (!st.bottom_vertex) {
      auto& r = add_row();
      r[b_idx(j + 1)] = Rational(1);
      r[b_idx(j)] = Rational(-1);
      rhs.back() = Rational(k_down);
    }
    // Duistermaat-Heckman jump, always stated (consistency when redundant).
    Rational e_top(0), e_bottom(0);
    if (st.top_vertex) {
      if (st.top_vertex->a == 0 || st.top_vertex->b == 0)
        throw Error(Errc::SolveFailed, "vertical isotropy weight at an interior station");
      e_top = Rational(-1, st.top_vertex->a * st.top_vertex->b);
    }
    if (st.bottom_vertex) {
      if (st.bottom_vertex->a == 0 || st.bottom_vertex->b == 0)
        throw Error(Errc::SolveFailed, "vertical isotropy weight at an interior station");
      e_bottom = Rational(-1, st.bottom_vertex->a * st.bottom_vertex->b);
    }
    auto& r = add_row();
    r[t_idx(j + 1)] = Rational(1);
    r[b_idx(j + 1)] = Rational(-1);
    r[t_idx(j)] = Rational(-1);
    r[b_idx(j)] = Rational(1);
    rhs.back() = Rational(-k_total) - e_top - e_bottom;
  }

  std::vector<Rational> sol = solve_linear(std::move(A), std::move(rhs), n_unknowns);
  std::vector<Rational> top(n_int), bottom(n_int);
  for (size_t j = 0; j < n_int; ++j) {
    top[j] = sol[t_idx(j)];
    bottom[j] = sol[b_idx(j)];
  }

  // Integrate the boundary chains.
  std::vector<Rational> xs{in.x_left};
  for (const SolveStation& st : in.stations) xs.push_back(st.x);
  xs.push_back(in.x_right);

  std::vector<Point> bottom_pts{in.anchor};
  for (size_t j = 0; j < n_int; ++j) {
    const Point& p = bottom_pts.back();
    bottom_pts.push_back({xs[j + 1], p.y + bottom[j] * (xs[j + 1] - xs[j])});
  }
  std::vector<Point> top_pts;  // right to left
  top_pts.push_back({in.x_right, bottom_pts.back().y + in.right_edge_length});
  for (size_t j = n_int; j-- > 0;) {
    const Point& p = top_pts.back();
    top_pts.push_back({xs[j], p.y - top[j] * (xs[j + 1] - xs[j])});
  }
  // Closure at the left vertical edge.
  if (top_pts.back().y - in.anchor.y != in.left_edge_length)
    throw Error(Errc::SolveFailed, "boundary chains do not close up");
  if (in.left_edge_length == Rational(0) && in.right_edge_length == Rational(0)) {
    // Corner-to-corner: widths must stay positive strictly inside.
  }
  for (size_t j = 1; j < xs.size() - 1; ++j) {
    if (top_pts[top_pts.size() - 1 - j].y <= bottom_pts[j].y)
      throw Error(Errc::SolveFailed, "chains cross: empty interior");
  }

  std::vector<Point> boundary = bottom_pts;
  boundary.insert(boundary.end(), top_pts.begin(), top_pts.end());
  RationalPolygon poly;
  try {
    poly = RationalPolygon::from_vertices(std::move(boundary));
  } catch (const Error& e) {
    throw Error(Errc::SolveFailed, std::string("integrated boundary invalid: ") + e.what());
  }

  std::vector<Node> nodes;
  for (size_t j = 0; j < m; ++j) {
    const SolveStation& st = in.stations[j];
    Rational base = bottom_pts[j + 1].y;
    for (const SolveNode& n : st.nodes) {
      Node node;
      node.position = {st.x, base + n.height};
      node.epsilon = n.epsilon;
      node.multiplicity = n.k;
      nodes.push_back(node);
    }
  }
  SolveResult res;
  try {
    res.sp = make_semitoric(poly, std::move(nodes));
  } catch (const Error& e) {
    throw Error(Errc::SolveFailed, std::string("node placement invalid: ") + e.what());
  }
  res.top_slopes = std::move(top);
  res.bottom_slopes = std::move(bottom);
  return res;
}

}  // namespace probekit
