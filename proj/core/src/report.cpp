#include "fsf/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fsf {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

// Sd is meaningless when the mean is absent.
std::string opt_sd(const SummaryStat& s) { return s.mean ? num(s.sd) : std::string(); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ReportError("results line " + std::to_string(line) + ": bad number '" + text + "'");
  }
}

SummaryStat read_stat(const std::string& mean, const std::string& sd, std::size_t line) {
  SummaryStat s;
  if (!mean.empty()) {
    s.mean = parse_double(mean, line);
    s.sd = sd.empty() ? 0.0 : parse_double(sd, line);
  }
  return s;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ReportError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "plot-data" || text == "plot_data") return ReportFormat::plot_data;
  throw ReportError("unknown report format '" + std::string(text) + "'");
}

void write_results_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.cell.router) << ',' << num(r.cell.buffer_mb) << ',' << num(r.cell.alpha) << ','
        << num(r.cell.beta) << ',' << r.seed_count << ',' << opt(r.delivery_ratio.mean) << ','
        << opt_sd(r.delivery_ratio) << ',' << opt(r.average_delay.mean) << ',' << opt_sd(r.average_delay) << ','
        << opt(r.average_cost.mean) << ',' << opt_sd(r.average_cost) << ',' << opt(r.efficiency.mean) << ','
        << opt_sd(r.efficiency) << '\n';
  }
}

std::vector<AggregateRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) throw ReportError("results: missing header");
  std::vector<AggregateRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 13) throw ReportError("results line " + std::to_string(line_no) + ": expected 13 fields");
    AggregateRow r;
    r.cell.router = parse_router_kind(f[0]);
    r.cell.buffer_mb = parse_double(f[1], line_no);
    r.cell.alpha = parse_double(f[2], line_no);
    r.cell.beta = parse_double(f[3], line_no);
    r.seed_count = static_cast<std::size_t>(parse_double(f[4], line_no));
    r.delivery_ratio = read_stat(f[5], f[6], line_no);
    r.average_delay = read_stat(f[7], f[8], line_no);
    r.average_cost = read_stat(f[9], f[10], line_no);
    r.efficiency = read_stat(f[11], f[12], line_no);
    rows.push_back(r);
  }
  return rows;
}

void write_runs_csv(const std::vector<RunRecord>& runs, std::ostream& out) {
  out << "router,buffer_mb,alpha,beta,seed,created,delivered,forwards,delivery_ratio,avg_delay_s,avg_cost,efficiency\n";
  for (const auto& r : runs) {
    const auto& m = r.metrics;
    out << to_string(r.cell.router) << ',' << num(r.cell.buffer_mb) << ',' << num(r.cell.alpha) << ','
        << num(r.cell.beta) << ',' << r.seed << ',' << m.created << ',' << m.delivered << ',' << m.forwards << ','
        << num(m.delivery_ratio) << ',' << opt(m.average_delay) << ',' << opt(m.average_cost) << ','
        << num(m.efficiency) << '\n';
  }
}

void write_metrics(const MetricsRecord& m, std::ostream& out) {
  out << "metric,value\n"
      << "created," << m.created << '\n'
      << "delivered," << m.delivered << '\n'
      << "forwards," << m.forwards << '\n'
      << "delivery_ratio," << num(m.delivery_ratio) << '\n'
      << "avg_delay_s," << opt(m.average_delay) << '\n'
      << "avg_cost," << opt(m.average_cost) << '\n'
      << "efficiency," << num(m.efficiency) << '\n';
}

std::vector<std::filesystem::path> emit_report(const std::vector<AggregateRow>& rows, ReportFormat format,
                                               const std::filesystem::path& dir) {
  if (rows.empty()) throw ReportError("no results to report");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ReportError("cannot create '" + dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  if (format == ReportFormat::csv) {
    const auto path = dir / "results.csv";
    auto out = open_out(path);
    write_results_csv(rows, out);
    if (!out) throw ReportError("failed writing '" + path.string() + "'");
    written.push_back(path);
    return written;
  }

  struct Metric {
    const char* name;
    const SummaryStat AggregateRow::*stat;
  };
  const Metric metrics[] = {{"delivery_ratio", &AggregateRow::delivery_ratio},
                            {"avg_delay_s", &AggregateRow::average_delay},
                            {"avg_cost", &AggregateRow::average_cost},
                            {"efficiency", &AggregateRow::efficiency}};
  std::vector<RouterKind> routers;
  for (const auto& r : rows) {
    if (std::find(routers.begin(), routers.end(), r.cell.router) == routers.end()) routers.push_back(r.cell.router);
  }
  for (RouterKind router : routers) {
    for (const auto& metric : metrics) {
      const auto path = dir / (std::string(to_string(router)) + "_" + metric.name + ".dat");
      auto out = open_out(path);
      out << "# router=" << to_string(router) << " metric=" << metric.name << '\n'
          << "# buffer_mb alpha beta mean sd\n";
      for (const auto& r : rows) {
        if (r.cell.router != router) continue;
        const auto& s = r.*(metric.stat);
        out << num(r.cell.buffer_mb) << ' ' << num(r.cell.alpha) << ' ' << num(r.cell.beta) << ' '
            << (s.mean ? num(*s.mean) : "nan") << ' ' << (s.mean ? num(s.sd) : "nan") << '\n';
      }
      if (!out) throw ReportError("failed writing '" + path.string() + "'");
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace fsf
