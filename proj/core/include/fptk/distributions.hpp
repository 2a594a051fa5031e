#ifndef FPTK_DISTRIBUTIONS_HPP
#define FPTK_DISTRIBUTIONS_HPP

#include <functional>
#include <string>
#include <vector>

namespace fptk::gof {

/// A named null hypothesis CDF.
struct NullDistribution {
  std::string name;  ///< canonical spelling, e.g. "normal(mu=0,sigma=1)"
  std::function<double(double)> cdf;
};

/// Parses a distribution spec:
///   uniform | uniform(a=0,b=1) | normal(mu=0,sigma=1) |
///   exponential(lambda=1) | @path/to/quantile_table
/// Parameters are key=value, comma separated, all optional with the defaults
/// shown. Throws DomainError on anything malformed.
NullDistribution parse_distribution_spec(const std::string& spec);

/// One numeric value per line; '#' starts a comment, blank lines ignored.
/// Throws DomainError on unparsable content or when no values remain.
std::vector<double> read_sample_file(const std::string& path);

/// Two-column text (probability, quantile), both strictly increasing, '#'
/// comments allowed. The CDF linearly interpolates between rows and clamps
/// to the end probabilities outside the tabulated range.
NullDistribution quantile_table_cdf(const std::string& path);

}  // namespace fptk::gof

#endif  // FPTK_DISTRIBUTIONS_HPP
