// Times the serial and OpenMP minor-gcd kernels on the built-in corpus and
// on synthetic block matrices, checking that both return identical results.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "alex/alexander.hpp"
#include "alex/presentations.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Case {
  std::string name;
  alex::AbelianMatrix matrix;
  int k = 0;
};

Case corpus_case(const std::string& name) {
  auto entry = alex::corpus_lookup(name);
  Case c;
  c.name = name;
  c.matrix = alex::b0_matrix(entry->pres);
  c.k = entry->pres.gen_count() - 1;
  return c;
}

// Product of k trefoil-and-line pieces: grows both matrix size and entry
// complexity without leaving exactly representable territory.
Case product_tower(int copies) {
  auto cubic = alex::corpus_lookup("cuspidal-cubic")->pres;
  auto line = alex::corpus_lookup("line")->pres;
  alex::WeightedPresentation acc = cubic;
  for (int i = 0; i < copies; ++i) {
    acc = alex::product_presentation(acc, i % 2 == 0 ? line : cubic);
  }
  Case c;
  c.name = "tower:" + std::to_string(copies);
  c.matrix = alex::b0_matrix(acc);
  c.k = acc.gen_count() - 1;
  return c;
}

}  // namespace

int main() {
  std::vector<Case> cases;
  for (const char* n :
       {"cuspidal-cubic", "trefoil-x-line", "ffm1", "parallel-lines:4"}) {
    cases.push_back(corpus_case(n));
  }
  cases.push_back(product_tower(2));
  cases.push_back(product_tower(3));

  std::printf("%-18s %6s %6s %12s %12s %8s\n", "case", "size", "k",
              "serial(ms)", "openmp(ms)", "equal");
  bool all_equal = true;
  for (const Case& c : cases) {
    auto t0 = Clock::now();
    alex::LaurentPoly serial = alex::minor_gcd(c.matrix, c.k);
    double t_serial = ms_since(t0);
    t0 = Clock::now();
    alex::LaurentPoly parallel = alex::minor_gcd_parallel(c.matrix, c.k);
    double t_parallel = ms_since(t0);
    bool equal = serial == parallel;
    all_equal = all_equal && equal;
    char size[32];
    std::snprintf(size, sizeof size, "%dx%d", c.matrix.rows, c.matrix.cols);
    std::printf("%-18s %6s %6d %12.2f %12.2f %8s\n", c.name.c_str(), size,
                c.k, t_serial, t_parallel, equal ? "yes" : "NO");
  }
  if (!all_equal) {
    std::printf("kernel outputs diverged\n");
    return 1;
  }
  return 0;
}
