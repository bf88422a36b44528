#ifndef VESD_CONFIG_HPP_
#define VESD_CONFIG_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace vesd {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Study parameters. `example` selects the data set: "1" (q = 1, no target),
 * "2" (q = 1, parabolic target), "3a"/"3b" (manufactured solutions) or "3"
 * (both manufactured cases). alpha0 may hold several values for example 1.
 */
struct StudyConfig {
  std::string example = "1";
  std::vector<double> alpha0{0.4, 0.7, 0.95};
  double alpha_slope = -1.0 / 6.0;
  double T = 0.5;
  std::vector<int> N_list{128, 256, 512, 1024};
  std::vector<int> M_list{8, 16, 32, 64};
  double kappa = 1.0;
  double tol = 1e-6;
  int max_iters = 500;
  int quad_nodes = 64;
  std::string out_dir = ".";

  /// Throws ConfigError on invalid values.
  void validate() const;
};

/// Reference experiment defaults for a data set id.
StudyConfig default_config(const std::string& example);

/**
 * Parse "key = value" lines ('#' starts a comment; lists are comma or space
 * separated). Keys: example, alpha0, alpha_slope, T, N_list, M_list, kappa,
 * tol, max_iters, quad_nodes, out_dir. Unknown keys are rejected. Defaults
 * come from default_config(example), with `example` taken from the file or
 * else from `fallback_example`.
 */
StudyConfig parse_config(std::istream& in, const std::string& fallback_example);

StudyConfig load_config(const std::string& path, const std::string& fallback_example);

}  // namespace vesd

#endif  // VESD_CONFIG_HPP_
