#include "morphdet/exp/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace morphdet {

namespace {

std::string pct2(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
  return buf;
}

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void write_report_csv(const std::vector<ReportRow>& rows,
                      const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("report: no rows");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot open " + path);
  out << "database,detector,eer_percent,frr_at_far10_percent\n";
  for (const auto& r : rows) {
    out << r.database << ',' << r.detector << ',' << pct2(r.eer) << ','
        << pct2(r.frr_at_far10) << '\n';
  }
  if (!out) throw std::runtime_error("report: write failed " + path);
}

void write_summary_json(const EvalSummary& summary, const std::string& database,
                        const std::string& detector, const std::string& path) {
  json j;
  j["database"] = database;
  j["detector"] = detector;
  j["eer"] = summary.eer;
  j["eer_threshold"] = summary.eer_threshold;
  j["far_at_threshold"] = summary.far_at_threshold;
  j["frr_at_threshold"] = summary.frr_at_threshold;
  j["frr_at_far10"] = summary.frr_at_far10;
  if (summary.attack_far) j["attack_far"] = *summary.attack_far;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("report: cannot open " + path);
  out << j.dump(2) << '\n';
}

ReportRow read_summary_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("report: cannot open " + path);
  json j;
  in >> j;
  ReportRow r;
  r.database = j.value("database", "");
  r.detector = j.value("detector", "");
  r.eer = j.at("eer").get<double>();
  r.frr_at_far10 = j.at("frr_at_far10").get<double>();
  return r;
}

void write_histogram_csv(const VulnHistogram& hist, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot open " + path);
  out << "bin_lo,bin_hi,genuine,zero_effort,attack\n";
  const std::size_t bins = hist.genuine.size();
  const double width = (hist.hi - hist.lo) / static_cast<double>(bins);
  char buf[80];
  for (std::size_t b = 0; b < bins; ++b) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", hist.lo + width * b,
                  hist.lo + width * (b + 1));
    out << buf << ',' << hist.genuine[b] << ',' << hist.zero_effort[b] << ','
        << hist.attack[b] << '\n';
  }
}

void write_histogram_svg(const VulnHistogram& hist, double threshold,
                         const std::string& path) {
  const std::size_t bins = hist.genuine.size();
  if (bins == 0 || hist.zero_effort.size() != bins ||
      hist.attack.size() != bins) {
    throw std::invalid_argument("histogram svg: inconsistent bin counts");
  }
  long max_count = 1;
  for (std::size_t b = 0; b < bins; ++b) {
    max_count = std::max({max_count, hist.genuine[b], hist.zero_effort[b],
                          hist.attack[b]});
  }

  const double width = 640.0, height = 400.0;
  const double ml = 50.0, mr = 15.0, mt = 20.0, mb = 40.0;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;
  auto sx = [&](double score) {
    return ml + pw * (score - hist.lo) / (hist.hi - hist.lo);
  };
  auto sy = [&](long count) {
    return mt + ph * (1.0 - static_cast<double>(count) /
                                static_cast<double>(max_count));
  };
  const double bin_w = (hist.hi - hist.lo) / static_cast<double>(bins);

  auto step_path = [&](const std::vector<long>& counts) {
    std::string d = "M " + svg_num(sx(hist.lo)) + " " + svg_num(sy(0));
    for (std::size_t b = 0; b < bins; ++b) {
      const double x0 = sx(hist.lo + bin_w * b);
      const double x1 = sx(hist.lo + bin_w * (b + 1));
      const double y = sy(counts[b]);
      d += " L " + svg_num(x0) + " " + svg_num(y);
      d += " L " + svg_num(x1) + " " + svg_num(y);
    }
    d += " L " + svg_num(sx(hist.hi)) + " " + svg_num(sy(0));
    return d;
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot open " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "  <rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << svg_num(ml) << "\" y1=\"" << svg_num(mt + ph)
      << "\" x2=\"" << svg_num(ml + pw) << "\" y2=\"" << svg_num(mt + ph)
      << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << svg_num(ml) << "\" y1=\"" << svg_num(mt)
      << "\" x2=\"" << svg_num(ml) << "\" y2=\"" << svg_num(mt + ph)
      << "\" stroke=\"black\"/>\n";

  const char* colors[3] = {"#2a7e3e", "#1f4e9c", "#c23b22"};
  const char* labels[3] = {"genuine", "zero-effort", "attack"};
  const std::vector<long>* series[3] = {&hist.genuine, &hist.zero_effort,
                                        &hist.attack};
  for (int s = 0; s < 3; ++s) {
    out << "  <path d=\"" << step_path(*series[s]) << "\" fill=\"none\""
        << " stroke=\"" << colors[s] << "\" stroke-width=\"1.5\"/>\n";
    out << "  <text x=\"" << svg_num(ml + 10.0) << "\" y=\""
        << svg_num(mt + 16.0 + 16.0 * s) << "\" fill=\"" << colors[s]
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << labels[s]
        << "</text>\n";
  }
  if (threshold >= hist.lo && threshold <= hist.hi) {
    out << "  <line x1=\"" << svg_num(sx(threshold)) << "\" y1=\""
        << svg_num(mt) << "\" x2=\"" << svg_num(sx(threshold)) << "\" y2=\""
        << svg_num(mt + ph)
        << "\" stroke=\"#555555\" stroke-dasharray=\"4 3\"/>\n";
    out << "  <text x=\"" << svg_num(sx(threshold) + 4.0) << "\" y=\""
        << svg_num(mt + ph - 6.0)
        << "\" fill=\"#555555\" font-family=\"sans-serif\" "
           "font-size=\"12\">threshold</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double score = hist.lo + (hist.hi - hist.lo) * t / 4.0;
    out << "  <text x=\"" << svg_num(sx(score)) << "\" y=\""
        << svg_num(mt + ph + 18.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << svg_num(score) << "</text>\n";
  }
  out << "  <text x=\"" << svg_num(ml - 8.0) << "\" y=\"" << svg_num(mt + 4.0)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << max_count << "</text>\n";
  out << "</svg>\n";
  if (!out) throw std::runtime_error("report: write failed " + path);
}

}  // namespace morphdet
