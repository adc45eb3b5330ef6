// Fits the embedded reference dataset with every solver and prints how many
// F evaluations each one needed.

#include <cstdio>
#include <span>

#include "weibull_bd.hpp"

int main() {
  using namespace weibull_bd;
  const Sample sample = build_sample(std::span<const double>(kReferenceDataset));
  std::printf("n = %zu, C1 = %.6f, C2 = %.6f\n\n", sample.n(), sample.c1(), sample.c2());

  for (Method m : kAllMethods) {
    SolverConfig cfg;
    cfg.method = m;
    cfg.delta2 = 1e-10;
    const FitResult r = fit(sample, cfg);
    std::printf("%-10s k = %-18.12g lambda = %-18.12g f_evals = %-4zu %s\n", std::string(to_string(m)).c_str(),
                r.trace.k_hat, r.params ? r.params->lambda() : 0.0, r.trace.f_evals,
                std::string(to_string(r.trace.status)).c_str());
  }
}
