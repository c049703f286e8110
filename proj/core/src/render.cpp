#include "foresight/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace foresight::render {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void allocation_block(std::ostringstream& out, const char* title, const PortfolioReport& r) {
  out << title << " (" << r.total_ideas << " ideas" << (r.empty ? ", portfolio empty" : "") << ")\n";
  char line[128];
  std::snprintf(line, sizeof line, "  %-15s %6s %10s %10s %10s\n", "category", "count", "actual",
                "target", "deviation");
  out << line;
  for (auto c : kAllCategories) {
    const auto i = static_cast<std::size_t>(c);
    std::snprintf(line, sizeof line, "  %-15s %6zu %10s %10s %10s\n",
                  std::string(to_string(c)).c_str(), r.counts[i], fixed(r.fractions[i]).c_str(),
                  fixed(r.target.fractions[i]).c_str(), fixed(r.deviations[i]).c_str());
    out << line;
  }
}

void allocation_rows(std::ostringstream& out, const char* slice, const PortfolioReport& r) {
  for (auto c : kAllCategories) {
    const auto i = static_cast<std::size_t>(c);
    out << slice << ',' << to_string(c) << ',' << r.counts[i] << ',' << fixed(r.fractions[i]) << ','
        << fixed(r.target.fractions[i]) << ',' << fixed(r.deviations[i]) << '\n';
  }
}

}  // namespace

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  // "-0.0000" -> "0.0000"
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string civps_text(const CIVPSResult& civps, const GateOutcome& gate) {
  std::ostringstream out;
  out << "scorers: " << civps.scorer_count << '\n';
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    out << to_string(static_cast<Dimension>(d)) << ": " << fixed(civps.per_dimension_mean[d]) << '\n';
  }
  out << "overall: " << fixed(civps.overall) << '\n';
  out << "gate: " << to_string(gate.decision) << " (threshold " << fixed(gate.threshold_used) << ")\n";
  return out.str();
}

std::string simulation_text(const McConfig& config, const McResult& result) {
  std::ostringstream out;
  out << "semantics: " << to_string(result.semantics) << '\n'
      << "n: " << result.n << '\n'
      << "seed: " << result.seed << '\n'
      << "mean_bv: " << fixed(result.mean_bv) << '\n'
      << "closed_form_expectation: " << fixed(closed_form_expectation(config)) << '\n'
      << "std_dev: " << fixed(result.std_dev) << '\n'
      << "prevented_count: " << result.prevented_count << '\n';
  for (const auto& [p, v] : result.percentiles) out << "p" << p << ": " << fixed(v) << '\n';
  out << "distribution: two-point\n"
      << "generator: " << result.generator_id << '\n';
  return out.str();
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << "index,c_incident,p_incident,c_investment,r_investment,semantics,n,seed,mean_bv,"
         "closed_form_expectation,std_dev,p5,p25,p50,p75,p95,prevented_count\n";
  for (const auto& row : rows) {
    const auto& c = row.config;
    const auto& r = row.result;
    out << row.index << ',' << fixed(c.c_incident) << ',' << fixed(c.p_incident, 6) << ','
        << fixed(c.c_investment) << ',' << fixed(c.r_investment, 6) << ',' << to_string(c.semantics)
        << ',' << c.n << ',' << c.seed << ',' << fixed(r.mean_bv) << ','
        << fixed(row.closed_form_expectation) << ',' << fixed(r.std_dev);
    for (const auto& [p, v] : r.percentiles) out << ',' << fixed(v);
    out << ',' << r.prevented_count << '\n';
  }
  return out.str();
}

std::string quadrant_text(std::span<const QuadrantPoint> points) {
  std::ostringstream out;
  for (const auto& p : points) {
    out << p.idea_id << ": effort " << p.effort << ", impact " << p.impact << " -> "
        << to_string(p.decision.quadrant) << '\n';
  }
  return out.str();
}

std::string quadrant_csv(std::span<const QuadrantPoint> points) {
  std::ostringstream out;
  out << "idea_id,effort,impact,decision\n";
  for (const auto& p : points) {
    out << csv_escape(p.idea_id) << ',' << p.effort << ',' << p.impact << ','
        << to_string(p.decision.quadrant) << '\n';
  }
  return out.str();
}

std::string classification_text(const QuadrantDecision& decision, const Recommendation& rec) {
  std::ostringstream out;
  out << "decision: " << to_string(decision.quadrant) << '\n'
      << "rationale: " << decision.rationale << '\n'
      << "proceed: " << to_string(rec.proceed) << '\n';
  for (const auto& c : rec.conditions) out << "condition: " << c << '\n';
  return out.str();
}

std::string allocation_text(const AllocationSummary& summary) {
  std::ostringstream out;
  allocation_block(out, "live pipeline", summary.live);
  allocation_block(out, "in execution or realized", summary.executed);
  return out.str();
}

std::string allocation_csv(const AllocationSummary& summary) {
  std::ostringstream out;
  out << "slice,category,count,fraction,target,deviation\n";
  allocation_rows(out, "live", summary.live);
  allocation_rows(out, "executed", summary.executed);
  return out.str();
}

std::string report_markdown(const CompositeReport& r, const std::string& currency) {
  std::ostringstream out;
  out << "# " << r.title << " (" << r.idea_id << ")\n\n"
      << "- category: " << to_string(r.category) << '\n'
      << "- stage: " << to_string(r.stage) << "\n\n";

  out << "## CIVPS\n\n";
  if (r.civps) {
    out << "| dimension | mean |\n|---|---:|\n";
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      out << "| " << to_string(static_cast<Dimension>(d)) << " | "
          << fixed(r.civps->per_dimension_mean[d]) << " |\n";
    }
    out << "| **overall** | **" << fixed(r.civps->overall) << "** |\n\n"
        << "Scorers: " << r.civps->scorer_count << ". Gate: " << to_string(r.gate->decision)
        << " at threshold " << fixed(r.gate->threshold_used) << ".\n\n";
  } else {
    out << "not evaluated\n\n";
  }

  out << "## Quantitative values\n\n| metric | value |\n|---|---:|\n";
  auto row = [&](const char* name, const std::optional<double>& v, const std::string& unit) {
    out << "| " << name << " | " << (v ? fixed(*v) + unit : std::string("not evaluated")) << " |\n";
  };
  row("RRV", r.rrv, " " + currency);
  row("OEV", r.oev, "");
  row("CBV", r.cbv, "");
  out << '\n';

  out << "## Monte Carlo\n\n";
  if (r.monte_carlo) {
    const auto& m = *r.monte_carlo;
    out << "| statistic | value |\n|---|---:|\n"
        << "| semantics | " << to_string(m.semantics) << " |\n"
        << "| n | " << m.n << " |\n"
        << "| seed | " << m.seed << " |\n"
        << "| mean BV | " << fixed(m.mean_bv) << ' ' << currency << " |\n";
    if (r.closed_form_expectation) {
      out << "| closed-form expectation | " << fixed(*r.closed_form_expectation) << ' ' << currency
          << " |\n";
    }
    out << "| std dev | " << fixed(m.std_dev) << " |\n"
        << "| prevented | " << m.prevented_count << " |\n";
    for (const auto& [p, v] : m.percentiles) out << "| p" << p << " | " << fixed(v) << " |\n";
    out << '\n';
  } else {
    out << "not evaluated\n\n";
  }

  if (!r.warnings.empty()) {
    out << "## Warnings\n\n";
    for (const auto& w : r.warnings) out << "- " << w << '\n';
  }
  return out.str();
}

std::string report_csv(const CompositeReport& r) {
  std::ostringstream out;
  out << "section,metric,value\n";
  if (r.civps) {
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      out << "civps," << to_string(static_cast<Dimension>(d)) << ','
          << fixed(r.civps->per_dimension_mean[d]) << '\n';
    }
    out << "civps,overall," << fixed(r.civps->overall) << '\n'
        << "civps,gate," << to_string(r.gate->decision) << '\n';
  } else {
    out << "civps,status,not_evaluated\n";
  }
  auto scalar = [&](const char* name, const std::optional<double>& v) {
    out << name << ",value," << (v ? fixed(*v) : std::string("not_evaluated")) << '\n';
  };
  scalar("rrv", r.rrv);
  scalar("oev", r.oev);
  scalar("cbv", r.cbv);
  if (r.monte_carlo) {
    out << "monte_carlo,mean_bv," << fixed(r.monte_carlo->mean_bv) << '\n'
        << "monte_carlo,std_dev," << fixed(r.monte_carlo->std_dev) << '\n'
        << "monte_carlo,prevented_count," << r.monte_carlo->prevented_count << '\n';
    if (r.closed_form_expectation) {
      out << "monte_carlo,closed_form_expectation," << fixed(*r.closed_form_expectation) << '\n';
    }
  } else {
    out << "monte_carlo,status,not_evaluated\n";
  }
  for (const auto& w : r.warnings) out << "warning,message," << csv_escape(w) << '\n';
  return out.str();
}

std::string idea_line(const Idea& idea) {
  return idea.id + "  [" + std::string(to_string(idea.stage)) + "]  " +
         std::string(to_string(idea.category)) + "  " + idea.title;
}

}  // namespace foresight::render
