#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "identity.hpp"
#include "props.hpp"

namespace mcshane {

/// 17 significant digits; non-finite values become `null`.
inline std::string num(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_string(const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o + "\"";
}

inline std::string json_pair(cplx z) { return "[" + num(z.real()) + "," + num(z.imag()) + "]"; }

inline std::string to_json(const IdentityReport& r) {
    std::ostringstream o;
    o << "{\"identity\":" << json_string(r.identity) << ",\"target\":" << json_pair(r.target)
      << ",\"total\":" << json_pair(r.total) << ",\"residual\":" << json_pair(r.residual)
      << ",\"residual_mod2pi\":" << num(r.residual_mod2pi) << ",\"terms\":" << r.terms
      << ",\"tail_bound\":" << num(r.tail_bound) << ",\"route\":" << json_string(r.route)
      << ",\"rep\":" << json_string(r.rep) << ",\"seed\":" << r.seed
      << ",\"diverged\":" << (r.diverged ? "true" : "false");
    if (r.alt_total) o << ",\"definitional_total\":" << json_pair(*r.alt_total);
    o << ",\"max_term_route_gap\":" << num(r.max_term_gap);
    if (!r.shells.empty()) {
        o << ",\"per_slope_total\":" << json_pair(r.per_slope_total) << ",\"shells\":[";
        for (std::size_t i = 0; i < r.shells.size(); ++i)
            o << (i ? "," : "") << "{\"threshold\":" << num(r.shells[i].threshold)
              << ",\"partial\":" << json_pair(r.shells[i].partial) << ",\"terms\":" << r.shells[i].terms << "}";
        o << "]";
    }
    if (r.fd_gap > 0.0) o << ",\"derivative_ratio_gap\":" << num(r.fd_gap);
    o << ",\"rows\":[";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        o << (i ? "," : "") << "{\"slope\":[" << row.slope.p << "," << row.slope.q << "],\"term\":" << json_pair(row.value)
          << ",\"partial\":" << json_pair(row.partial) << ",\"trace_abs\":" << num(row.trace_abs) << "}";
    }
    o << "]}";
    return o.str();
}

inline std::string to_csv(const IdentityReport& r) {
    std::ostringstream o;
    o << "p,q,term_re,term_im,partial_re,partial_im\n";
    for (const auto& row : r.rows)
        o << row.slope.p << "," << row.slope.q << "," << num(row.value.real()) << "," << num(row.value.imag()) << ","
          << num(row.partial.real()) << "," << num(row.partial.imag()) << "\n";
    return o.str();
}

inline std::string to_text(const IdentityReport& r) {
    std::ostringstream o;
    o << r.identity << "\n"
      << "  rep        " << r.rep << "\n"
      << "  route      " << r.route << "\n"
      << "  target     " << num(r.target.real()) << " " << num(r.target.imag()) << "i\n"
      << "  total      " << num(r.total.real()) << " " << num(r.total.imag()) << "i\n"
      << "  |residual| " << num(std::abs(r.residual)) << " (mod 2pi i: " << num(r.residual_mod2pi) << ")\n"
      << "  terms      " << r.terms << "\n"
      << "  tail bound " << num(r.tail_bound) << "\n";
    if (r.alt_total)
        o << "  definitional total " << num(r.alt_total->real()) << " " << num(r.alt_total->imag())
          << "i, route gap " << num(std::abs(*r.alt_total - r.total)) << "\n";
    for (const auto& s : r.shells)
        o << "  shell T=" << num(s.threshold) << "  |partial| " << num(std::abs(s.partial)) << "  terms " << s.terms
          << "\n";
    if (r.diverged) o << "  DIVERGED\n";
    char t[32];
    std::snprintf(t, sizeof t, "%.3f", r.seconds);
    o << "  seconds    " << t << "\n";
    return o.str();
}

inline std::string to_text(const SuiteResult& s) {
    std::ostringstream o;
    o << s.suite << ": " << (s.pass() ? "pass" : "FAIL") << "\n";
    for (const auto& c : s.checks)
        o << "  [" << (c.pass() ? "ok  " : (c.binding ? "FAIL" : "info")) << "] " << c.name << "  worst "
          << num(c.worst) << "  tol " << num(c.tol) << "  samples " << c.samples
          << (c.violations ? "  violations " + std::to_string(c.violations) : "") << "\n";
    return o.str();
}

inline std::string to_json(const SuiteResult& s) {
    std::ostringstream o;
    o << "{\"suite\":" << json_string(s.suite) << ",\"pass\":" << (s.pass() ? "true" : "false") << ",\"checks\":[";
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
        const auto& c = s.checks[i];
        o << (i ? "," : "") << "{\"name\":" << json_string(c.name) << ",\"worst\":" << num(c.worst)
          << ",\"tol\":" << num(c.tol) << ",\"samples\":" << c.samples << ",\"violations\":" << c.violations
          << ",\"binding\":" << (c.binding ? "true" : "false") << ",\"pass\":" << (c.pass() ? "true" : "false")
          << "}";
    }
    o << "]}";
    return o.str();
}

}  // namespace mcshane
