#include "brownsig/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace brownsig {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_profile_csv(std::ostream& os, const BrownProfile& prof) {
  os << "a,a0,b_t,w_t,flag\n";
  for (std::size_t i = 0; i < prof.size(); ++i)
    os << fmt(prof.a[i]) << ',' << fmt(prof.a0[i]) << ',' << fmt(prof.halfheight[i]) << ','
       << fmt(prof.density[i]) << ',' << (prof.near_boundary[i] ? "near_boundary" : "interior") << '\n';
}

void write_law_csv(std::ostream& os, const AdditiveLaw& law) {
  os << "u,f\n";
  for (std::size_t i = 0; i < law.u.size(); ++i) os << fmt(law.u[i]) << ',' << fmt(law.f[i]) << '\n';
}

void write_cloud_csv(std::ostream& os, const EigenCloud& cloud) {
  os << "re,im,rep\n";
  for (std::size_t i = 0; i < cloud.points.size(); ++i)
    os << fmt(cloud.points[i].real()) << ',' << fmt(cloud.points[i].imag()) << ',' << cloud.rep[i] << '\n';
}

namespace {

struct Range {
  double lo, hi;
};

// density extremes over points away from the edges, where the grid values are trustworthy
Range density_range(const BrownProfile& prof) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < prof.size(); ++i) {
    if (prof.near_boundary[i]) continue;
    r.lo = std::min(r.lo, prof.density[i]);
    r.hi = std::max(r.hi, prof.density[i]);
  }
  if (r.lo > r.hi)
    for (double w : prof.density) r = {std::min(r.lo, w), std::max(r.hi, w)};
  return r;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

// Hand-written rather than through a JSON library so key order and number format stay fixed.
std::string summary_json(const BrownProfile& prof, const SummaryInfo& info) {
  const Range d = density_range(prof);
  std::ostringstream os;
  os << "{\"schema\":1,\"t\":" << fmt(prof.t) << ",\"measure\":" << quoted(info.label)
     << ",\"digest\":" << quoted(info.digest) << ",\"omega_intervals\":[";
  for (std::size_t k = 0; k < prof.omega_intervals.size(); ++k)
    os << (k ? "," : "") << '[' << fmt(prof.omega_intervals[k].lo) << ',' << fmt(prof.omega_intervals[k].hi) << ']';
  os << "],\"mass\":" << fmt(prof.mass) << ",\"min_density\":" << fmt(d.lo) << ",\"max_density\":" << fmt(d.hi)
     << ",\"max_height\":" << fmt(info.max_height) << ",\"grid_points\":" << prof.size() << "}\n";
  return os.str();
}

namespace {

struct Panel {
  double x0, y0, w, h;
  double xmin, xmax, ymin, ymax;
  double px(double x) const { return x0 + w * (x - xmin) / (xmax - xmin); }
  double py(double y) const { return y0 + h * (1.0 - (y - ymin) / (ymax - ymin)); }
};

void frame(std::ostringstream& os, const Panel& p, const std::string& xlabel, const std::string& ylabel) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" stroke=\"black\"/>\n",
                p.x0, p.y0, p.w, p.h);
  os << buf;
  for (int k = 0; k <= 4; ++k) {
    const double x = p.xmin + (p.xmax - p.xmin) * k / 4.0;
    const double y = p.ymin + (p.ymax - p.ymin) * k / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"middle\">%.4g</text>\n"
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.4g</text>\n",
                  p.px(x), p.y0 + p.h + 14, x, p.x0 - 4, p.py(y) + 4, y);
    os << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"middle\">%s</text>\n"
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n",
                p.x0 + p.w / 2, p.y0 + p.h + 30, xlabel.c_str(), p.x0 + 4, p.y0 + 14, ylabel.c_str());
  os << buf;
}

void polyline(std::ostringstream& os, const Panel& p, const std::vector<double>& xs, const std::vector<double>& ys,
              const char* colour) {
  os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
  char buf[64];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", p.px(xs[i]), p.py(ys[i]));
    os << buf;
  }
  os << "\"/>\n";
}

}  // namespace

std::string render_svg(const BrownProfile& prof, const SummaryInfo& info,
                       const std::vector<std::complex<double>>& cloud) {
  const double W = 720, H = 760;
  double xmin = prof.omega_intervals.front().lo, xmax = prof.omega_intervals.back().hi;
  double hmax = 0.0;
  for (double b : prof.halfheight) hmax = std::max(hmax, b);
  const double pad = 0.05 * (xmax - xmin);
  xmin -= pad;
  xmax += pad;
  const double ylim = 1.15 * std::max(hmax, 1e-3);
  const Range d = density_range(prof);
  double wlo = std::min(0.0, d.lo), whi = d.hi;
  for (std::size_t i = 0; i < prof.size(); ++i) whi = std::max(whi, prof.density[i]);
  if (whi - wlo < 1e-12) whi = wlo + 1.0;
  whi += 0.1 * (whi - wlo);

  const Panel top{70, 50, W - 100, 300, xmin, xmax, -ylim, ylim};
  const Panel bottom{70, 420, W - 100, 280, xmin, xmax, wlo, whi};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">", W / 2);
  os << buf << xml_escape(info.label) << "  t = " << fmt(prof.t) << "  digest " << info.digest << "</text>\n";

  frame(os, top, "Re", "Im");
  for (const auto& z : cloud) {
    if (z.real() < xmin || z.real() > xmax || std::abs(z.imag()) > ylim) continue;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"0.8\" fill=\"#999\"/>\n", top.px(z.real()),
                  top.py(z.imag()));
    os << buf;
  }
  for (std::size_t k = 0; k < prof.omega_intervals.size(); ++k) {
    // closed curve: upper edge left to right, lower edge back
    std::vector<double> xs{prof.omega_intervals[k].lo}, ys{0.0};
    for (std::size_t i = prof.offsets[k]; i < prof.offsets[k + 1]; ++i) {
      xs.push_back(prof.a[i]);
      ys.push_back(prof.halfheight[i]);
    }
    xs.push_back(prof.omega_intervals[k].hi);
    ys.push_back(0.0);
    for (std::size_t i = prof.offsets[k + 1]; i-- > prof.offsets[k];) {
      xs.push_back(prof.a[i]);
      ys.push_back(-prof.halfheight[i]);
    }
    xs.push_back(xs.front());
    ys.push_back(0.0);
    polyline(os, top, xs, ys, "#1f4e9c");
  }

  frame(os, bottom, "a", "w_t(a)");
  for (std::size_t k = 0; k < prof.omega_intervals.size(); ++k) {
    std::vector<double> xs, ys;
    for (std::size_t i = prof.offsets[k]; i < prof.offsets[k + 1]; ++i) {
      xs.push_back(prof.a[i]);
      ys.push_back(prof.density[i]);
    }
    polyline(os, bottom, xs, ys, "#b2182b");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace brownsig
