#include "fptk/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>

#include "fptk/errors.hpp"

namespace fptk::gof {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& token, const std::string& context) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw DomainError(context + ": cannot parse number '" + token + "'");
  }
  if (pos != token.size()) {
    throw DomainError(context + ": trailing characters in '" + token + "'");
  }
  return value;
}

std::map<std::string, double> parse_params(const std::string& body,
                                           const std::string& context) {
  std::map<std::string, double> params;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw DomainError(context + ": expected key=value, got '" + item + "'");
    }
    const std::string key = trim(item.substr(0, eq));
    params[key] = parse_number(trim(item.substr(eq + 1)), context);
  }
  return params;
}

double take(std::map<std::string, double>& params, const std::string& key,
            double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

NullDistribution parse_distribution_spec(const std::string& raw) {
  const std::string spec = trim(raw);
  if (spec.empty()) throw DomainError("distribution spec: empty");
  if (spec.front() == '@') return quantile_table_cdf(spec.substr(1));

  std::string name = spec;
  std::string body;
  const auto open = spec.find('(');
  if (open != std::string::npos) {
    if (spec.back() != ')') {
      throw DomainError("distribution spec: missing ')': " + spec);
    }
    name = trim(spec.substr(0, open));
    body = spec.substr(open + 1, spec.size() - open - 2);
  }
  auto params = parse_params(body, "distribution spec");
  NullDistribution dist;
  if (name == "uniform") {
    const double a = take(params, "a", 0.0);
    const double b = take(params, "b", 1.0);
    if (!(b > a)) throw DomainError("uniform: requires b > a");
    dist.name = "uniform(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
    dist.cdf = [a, b](double x) {
      return std::clamp((x - a) / (b - a), 0.0, 1.0);
    };
  } else if (name == "normal") {
    const double mu = take(params, "mu", 0.0);
    const double sigma = take(params, "sigma", 1.0);
    if (!(sigma > 0.0)) throw DomainError("normal: requires sigma > 0");
    dist.name =
        "normal(mu=" + std::to_string(mu) + ",sigma=" + std::to_string(sigma) + ")";
    dist.cdf = [mu, sigma](double x) {
      return 0.5 * std::erfc(-(x - mu) / sigma * kInvSqrt2);
    };
  } else if (name == "exponential") {
    const double lambda = take(params, "lambda", 1.0);
    if (!(lambda > 0.0)) throw DomainError("exponential: requires lambda > 0");
    dist.name = "exponential(lambda=" + std::to_string(lambda) + ")";
    dist.cdf = [lambda](double x) {
      return (x <= 0.0) ? 0.0 : -std::expm1(-lambda * x);
    };
  } else {
    throw DomainError("distribution spec: unknown distribution '" + name + "'");
  }
  if (!params.empty()) {
    throw DomainError("distribution spec: unknown parameter '" +
                      params.begin()->first + "' for " + name);
  }
  return dist;
}

std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("sample file: cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    values.push_back(
        parse_number(line, path + ":" + std::to_string(line_no)));
  }
  if (values.empty()) {
    throw DomainError("sample file: no values in '" + path + "'");
  }
  return values;
}

NullDistribution quantile_table_cdf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("quantile table: cannot open '" + path + "'");
  std::vector<double> prob, quant;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string u_tok, x_tok, extra;
    ss >> u_tok >> x_tok;
    if (x_tok.empty()) {
      throw DomainError("quantile table: need two columns at " + path + ":" +
                        std::to_string(line_no));
    }
    if (ss >> extra) {
      throw DomainError("quantile table: more than two columns at " + path +
                        ":" + std::to_string(line_no));
    }
    const std::string ctx = path + ":" + std::to_string(line_no);
    prob.push_back(parse_number(u_tok, ctx));
    quant.push_back(parse_number(x_tok, ctx));
  }
  if (prob.size() < 2) {
    throw DomainError("quantile table: need at least two rows in '" + path + "'");
  }
  for (std::size_t i = 0; i < prob.size(); ++i) {
    if (!(prob[i] >= 0.0 && prob[i] <= 1.0)) {
      throw DomainError("quantile table: probabilities must lie in [0,1]");
    }
    if (i > 0 && !(prob[i] > prob[i - 1] && quant[i] > quant[i - 1])) {
      throw DomainError("quantile table: both columns must strictly increase");
    }
  }
  NullDistribution dist;
  dist.name = "@" + path;
  dist.cdf = [prob = std::move(prob), quant = std::move(quant)](double x) {
    if (x <= quant.front()) return prob.front();
    if (x >= quant.back()) return prob.back();
    const auto it = std::upper_bound(quant.begin(), quant.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - quant.begin());
    const double w = (x - quant[i - 1]) / (quant[i] - quant[i - 1]);
    return prob[i - 1] + w * (prob[i] - prob[i - 1]);
  };
  return dist;
}

}  // namespace fptk::gof
