#include <algorithm>
#include <cmath>
#include <functional>

#include "graphrep/analysis.hpp"

namespace graphrep {

const char* to_string(SpectralMethod m) {
  return m == SpectralMethod::CharPoly ? "char-poly" : "power-iteration";
}

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error("characteristic polynomial overflow");
  return static_cast<std::int64_t>(v);
}

long double eval(const std::vector<std::int64_t>& p, long double x) {
  long double r = 0;
  for (auto c : p) r = r * x + static_cast<long double>(c);
  return r;
}

long double eval_derivative(const std::vector<std::int64_t>& p, long double x) {
  long double r = 0;
  int n = static_cast<int>(p.size()) - 1;
  for (int i = 0; i < n; ++i) r = r * x + static_cast<long double>(p[i]) * (n - i);
  return r;
}

Wide eval_exact(const std::vector<std::int64_t>& p, std::int64_t x) {
  Wide r = 0;
  for (auto c : p) r = r * x + c;
  return r;
}

struct BlockResult {
  double growth = 0;
  double residual = 0;
  bool exact = false;
  bool charpoly = true;
};

BlockResult charpoly_growth(const IntMatrix& a, double tol) {
  BlockResult r;
  const std::size_t n = a.size();
  std::int64_t bound = 0;
  for (const auto& row : a) {
    std::int64_t s = 0;
    for (auto v : row) s += v;
    bound = std::max(bound, s);
  }
  if (bound == 0) {
    r.exact = true;
    return r;
  }
  auto p = characteristic_polynomial(a);
  long double x = static_cast<long double>(bound);
  long double step = 0;
  for (int it = 0; it < 200000; ++it) {
    long double fx = eval(p, x);
    if (fx <= 0) break;
    long double d = eval_derivative(p, x);
    if (d <= 0) break;
    step = fx / d;
    x -= step;
    if (step <= tol * 1e-3L * std::max<long double>(1, x)) break;
  }
  r.growth = static_cast<double>(x);
  r.residual = static_cast<double>(std::fabs(step));
  std::int64_t k = std::llround(static_cast<double>(x));
  if (std::fabs(static_cast<double>(x) - static_cast<double>(k)) < 1e-6 && eval_exact(p, k) == 0) {
    r.growth = static_cast<double>(k);
    r.residual = 0;
    r.exact = true;
  }
  (void)n;
  return r;
}

BlockResult power_growth(const IntMatrix& a, double tol, int max_iterations) {
  BlockResult r;
  r.charpoly = false;
  const std::size_t n = a.size();
  std::vector<long double> x(n, 1.0L), y(n);
  for (int it = 0; it < max_iterations; ++it) {
    long double lo = INFINITY, hi = 0, top = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long double s = x[i];
      for (std::size_t j = 0; j < n; ++j) s += static_cast<long double>(a[i][j]) * x[j];
      y[i] = s;
      lo = std::min(lo, s / x[i]);
      hi = std::max(hi, s / x[i]);
      top = std::max(top, s);
    }
    if (hi - lo <= tol * std::max<long double>(1, hi)) {
      r.growth = static_cast<double>((hi + lo) / 2 - 1);
      r.residual = static_cast<double>(hi - lo);
      return r;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / top;
  }
  throw Error("did not converge within iteration budget");
}

}  // namespace

std::vector<std::int64_t> characteristic_polynomial(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<Wide> c(n + 1, 0);
  c[n] = 1;
  std::vector<std::vector<Wide>> m(n, std::vector<Wide>(n, 0)), am(n, std::vector<Wide>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    std::vector<std::vector<Wide>> next(n, std::vector<Wide>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Wide s = 0;
        for (std::size_t l = 0; l < n; ++l) s += static_cast<Wide>(a[i][l]) * m[l][j];
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    m = std::move(next);
    Wide tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += static_cast<Wide>(a[i][l]) * m[l][i];
    c[n - k] = -tr / static_cast<Wide>(k);
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = n + 1; i-- > 0;) out.push_back(narrow(c[i]));
  return out;
}

std::vector<std::vector<int>> irreducible_blocks(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on(n, 0);
  std::vector<int> stack;
  int counter = 0;
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = 1;
    for (int w = 0; w < n; ++w) {
      if (a[v][w] <= 0) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> b;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = 0;
        b.push_back(w);
      } while (w != v);
      std::sort(b.begin(), b.end());
      blocks.push_back(std::move(b));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

IntMatrix submatrix(const IntMatrix& a, const std::vector<int>& idx) {
  IntMatrix s(idx.size(), std::vector<std::int64_t>(idx.size(), 0));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s[i][j] = a[idx[i]][idx[j]];
  return s;
}

IntMatrix matrix_power(const IntMatrix& a, int n) {
  const std::size_t k = a.size();
  IntMatrix r(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) r[i][i] = 1;
  for (int step = 0; step < n; ++step) {
    IntMatrix next(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t l = 0; l < k; ++l) {
        if (!r[i][l]) continue;
        for (std::size_t j = 0; j < k; ++j) {
          std::int64_t prod, sum;
          if (__builtin_mul_overflow(r[i][l], a[l][j], &prod) ||
              __builtin_add_overflow(next[i][j], prod, &sum))
            throw Error("matrix power overflow");
          next[i][j] = sum;
        }
      }
    r = std::move(next);
  }
  return r;
}

std::int64_t trace(const IntMatrix& a) {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

SpectralResult power_iteration_growth(const IntMatrix& a, double tol, int max_iterations) {
  SpectralResult out;
  out.method = SpectralMethod::PowerIteration;
  for (const auto& b : irreducible_blocks(a)) {
    IntMatrix s = submatrix(a, b);
    if (b.size() == 1 && s[0][0] == 0) continue;
    BlockResult r = power_growth(s, tol, max_iterations);
    if (r.growth > out.growth) {
      out.growth = r.growth;
      out.residual = r.residual;
    }
  }
  out.entropy = out.growth > 1 ? std::log(out.growth) : 0.0;
  return out;
}

SpectralResult growth_rate(const IntMatrix& a, double tol, int max_iterations) {
  for (const auto& row : a)
    if (row.size() != a.size()) throw Error("matrix is not square");
  SpectralResult out;
  bool all_charpoly = true;
  bool exact = true;
  for (const auto& b : irreducible_blocks(a)) {
    IntMatrix s = submatrix(a, b);
    if (b.size() == 1 && s[0][0] == 0) continue;
    BlockResult r = b.size() <= 12 ? charpoly_growth(s, tol) : power_growth(s, tol, max_iterations);
    all_charpoly = all_charpoly && r.charpoly;
    if (r.growth > out.growth) {
      out.growth = r.growth;
      out.residual = r.residual;
      exact = r.exact;
    }
  }
  out.method = all_charpoly ? SpectralMethod::CharPoly : SpectralMethod::PowerIteration;
  out.exact = exact;
  out.entropy = out.growth > 1 ? std::log(out.growth) : 0.0;
  return out;
}

SpectralResult growth_rate(const TransitionMatrix& m, double tol) {
  return growth_rate(m.entries, tol);
}

}  // namespace graphrep
