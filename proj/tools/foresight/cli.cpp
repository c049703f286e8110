#include "foresight/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "foresight/civps.hpp"
#include "foresight/funnel.hpp"
#include "foresight/operations.hpp"
#include "foresight/portfolio.hpp"
#include "foresight/render.hpp"
#include "foresight/roadmap.hpp"
#include "foresight/store.hpp"

namespace foresight::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::vector<int> parse_score_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("--scores expects six integers: " + text);
    out.push_back(value);
  }
  if (out.size() != kDimensionCount) throw UsageError("--scores expects six integers: " + text);
  return out;
}

InnovationCategory category_arg(const std::string& text) {
  auto c = parse_category(text);
  if (!c) throw UsageError("unknown category '" + text + "'");
  return *c;
}

McSemantics semantics_arg(const std::string& text) {
  auto s = parse_semantics(text);
  if (!s) throw UsageError("unknown semantics '" + text + "' (paper_verbatim | prevented_event)");
  return *s;
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw UsageError("unsupported --format '" + format + "'");
}

std::atomic<HttpServer*> g_server{nullptr};

extern "C" void stop_on_signal(int) {
  if (HttpServer* s = g_server.load()) s->stop();
}

}  // namespace

Environment process_environment() {
  Environment env;
  env.getenv = [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  };
  return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Cybersecurity innovation funnel: scoring, value models and simulation", "foresight"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string portfolio_flag;
  app.add_option("--portfolio", portfolio_flag, "Portfolio JSON file (or FORESIGHT_PORTFOLIO)");

  std::string format = "text";

  // init
  auto* init_cmd = app.add_subcommand("init", "Create an empty portfolio file");
  std::string currency = "USD";
  bool force = false;
  init_cmd->add_option("--currency", currency, "Display currency label");
  init_cmd->add_flag("--force", force, "Overwrite an existing file");

  // idea add|list|show
  auto* idea_cmd = app.add_subcommand("idea", "Create and inspect ideas");
  idea_cmd->require_subcommand(1);
  auto* idea_add = idea_cmd->add_subcommand("add", "Add a Draft idea");
  NewIdea new_idea;
  std::string new_category;
  std::optional<double> new_threshold;
  idea_add->add_option("--title", new_idea.title)->required();
  idea_add->add_option("--description", new_idea.description);
  idea_add->add_option("--category", new_category)->required();
  idea_add->add_option("--originator", new_idea.originator);
  idea_add->add_option("--civps-threshold", new_threshold, "Per-idea gate threshold in [1,10]");
  idea_add->add_option("--format", format)->capture_default_str();
  auto* idea_list = idea_cmd->add_subcommand("list", "List ideas");
  idea_list->add_option("--format", format)->capture_default_str();
  auto* idea_show = idea_cmd->add_subcommand("show", "Show one idea as JSON");
  std::string idea_id;
  idea_show->add_option("id", idea_id)->required();

  // score add
  auto* score_cmd = app.add_subcommand("score", "Submit scorecards");
  score_cmd->require_subcommand(1);
  auto* score_add = score_cmd->add_subcommand("add", "Submit or replace a forum member's scorecard");
  Scorecard card;
  score_add->add_option("id", idea_id)->required();
  score_add->add_option("--scorer", card.scorer_id, "Forum member id (caller-asserted)")->required();
  score_add->add_option("--revenue", card.revenue)->required();
  score_add->add_option("--cost-efficiency", card.cost_efficiency)->required();
  score_add->add_option("--operational-efficiency", card.operational_efficiency)->required();
  score_add->add_option("--risk-mitigation", card.risk_mitigation)->required();
  score_add->add_option("--trust-building", card.trust_building)->required();
  score_add->add_option("--strategic-alignment", card.strategic_alignment)->required();

  // civps
  auto* civps_cmd = app.add_subcommand("civps", "Compute CIVPS for an idea or ad-hoc scores");
  std::vector<std::string> score_lists;
  std::optional<double> civps_threshold;
  civps_cmd->add_option("id", idea_id, "Stored idea");
  civps_cmd->add_option("--scores", score_lists, "Six comma-separated scores; repeat per scorer");
  civps_cmd->add_option("--threshold", civps_threshold, "Gate threshold for ad-hoc scores");
  civps_cmd->add_option("--format", format)->capture_default_str();

  // gate
  auto* gate_cmd = app.add_subcommand("gate", "Apply the CIVPS gate (pass or return for refinement)");
  std::string actor = "cli";
  gate_cmd->add_option("id", idea_id)->required();
  gate_cmd->add_option("--actor", actor);

  // advance
  auto* advance_cmd = app.add_subcommand("advance", "Apply a funnel event to an idea");
  std::string event_kind;
  std::string event_category;
  std::optional<int> event_effort;
  std::optional<int> event_impact;
  std::string note;
  advance_cmd->add_option("id", idea_id)->required();
  advance_cmd->add_option("--event", event_kind, "categorize | roadmap | approve_execution | "
                                                 "declare_value_realized | resubmit | reject")
      ->required();
  advance_cmd->add_option("--category", event_category, "For categorize");
  advance_cmd->add_option("--effort", event_effort, "For roadmap");
  advance_cmd->add_option("--impact", event_impact, "For roadmap");
  advance_cmd->add_option("--note", note, "Milestone or reason text");
  advance_cmd->add_option("--actor", actor);

  // history
  auto* history_cmd = app.add_subcommand("history", "Print an idea's event history as JSON");
  history_cmd->add_option("id", idea_id)->required();

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo business value");
  std::optional<double> c_incident, p_incident, c_investment, r_investment;
  std::optional<std::uint64_t> sim_n, sim_seed;
  std::string semantics_text;
  unsigned threads = 0;
  std::string sim_idea;
  sim_cmd->add_option("--c-incident", c_incident);
  sim_cmd->add_option("--p-incident", p_incident);
  sim_cmd->add_option("--c-investment", c_investment);
  sim_cmd->add_option("--r-investment", r_investment);
  sim_cmd->add_option("--n", sim_n, "Iterations");
  sim_cmd->add_option("--seed", sim_seed, "PRNG seed (required for ad-hoc runs)");
  sim_cmd->add_option("--semantics", semantics_text, "paper_verbatim | prevented_event");
  sim_cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
  sim_cmd->add_option("--idea", sim_idea, "Run for a stored idea and record the result");
  sim_cmd->add_option("--format", format, "text | json | histogram")->capture_default_str();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Simulate every cell of a parameter grid");
  SweepGrid grid;
  std::vector<std::string> sweep_semantics;
  sweep_cmd->add_option("--c-incident", grid.c_incident)->required()->delimiter(',');
  sweep_cmd->add_option("--p-incident", grid.p_incident)->required()->delimiter(',');
  sweep_cmd->add_option("--c-investment", grid.c_investment)->required()->delimiter(',');
  sweep_cmd->add_option("--r-investment", grid.r_investment)->required()->delimiter(',');
  sweep_cmd->add_option("--semantics", sweep_semantics)->delimiter(',');
  sweep_cmd->add_option("--n", grid.n)->required();
  sweep_cmd->add_option("--seed", grid.master_seed, "Master seed")->required();
  sweep_cmd->add_option("--threads", threads);
  std::size_t max_cells = kDefaultSweepCap;
  sweep_cmd->add_option("--max-cells", max_cells, "Grid cardinality cap");
  sweep_cmd->add_option("--format", format, "csv | json")->capture_default_str();

  // quadrant
  auto* quad_cmd = app.add_subcommand("quadrant", "Effort/impact classification");
  std::optional<int> q_effort, q_impact;
  std::optional<double> q_civps;
  std::string q_category = "sustaining";
  int effort_threshold = kDefaultEffortThreshold;
  int impact_threshold = kDefaultImpactThreshold;
  double top_tier = kDefaultTopTierThreshold;
  quad_cmd->add_option("--effort", q_effort);
  quad_cmd->add_option("--impact", q_impact);
  quad_cmd->add_option("--civps", q_civps, "Overall CIVPS for the recommendation");
  quad_cmd->add_option("--category", q_category);
  quad_cmd->add_option("--effort-threshold", effort_threshold);
  quad_cmd->add_option("--impact-threshold", impact_threshold);
  quad_cmd->add_option("--top-tier", top_tier);
  quad_cmd->add_option("--format", format, "text | json | csv")->capture_default_str();

  // portfolio allocation
  auto* port_cmd = app.add_subcommand("portfolio", "Portfolio analytics");
  port_cmd->require_subcommand(1);
  auto* alloc_cmd = port_cmd->add_subcommand("allocation", "Category mix vs. target allocation");
  alloc_cmd->add_option("--format", format, "text | json | csv")->capture_default_str();

  // report
  auto* report_cmd = app.add_subcommand("report", "Composite value report for an idea");
  report_cmd->add_option("id", idea_id)->required();
  report_cmd->add_option("--format", format, "markdown | csv | json");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON API");
  std::string bind;
  serve_cmd->add_option("--bind", bind, "host:port (or FORESIGHT_BIND)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto portfolio_path = [&]() -> std::string {
    if (!portfolio_flag.empty()) return portfolio_flag;
    if (env.getenv) {
      if (auto v = env.getenv("FORESIGHT_PORTFOLIO"); v && !v->empty()) return *v;
    }
    throw UsageError("no portfolio: pass --portfolio <path> or set FORESIGHT_PORTFOLIO");
  };
  auto optional_portfolio = [&]() -> std::optional<PortfolioFile> {
    if (portfolio_flag.empty() && !(env.getenv && env.getenv("FORESIGHT_PORTFOLIO"))) {
      return std::nullopt;
    }
    return load_portfolio(portfolio_path());
  };

  SimulationOptions sim_options = env.simulation;
  if (threads != 0) sim_options.threads = threads;

  try {
    if (init_cmd->parsed()) {
      const auto path = portfolio_path();
      if (std::filesystem::exists(path) && !force) {
        throw UsageError(path + " already exists (use --force to overwrite)");
      }
      PortfolioFile fresh;
      fresh.currency_label = currency;
      save_portfolio(fresh, path);
      out << "initialized " << path << '\n';
      return kExitOk;
    }

    if (idea_add->parsed()) {
      check_format(format, {"text", "json"});
      const auto path = portfolio_path();
      auto portfolio = load_portfolio(path);
      new_idea.category = category_arg(new_category);
      new_idea.civps_threshold_override = new_threshold;
      const Idea idea = create_idea(portfolio, new_idea, env.clock());
      save_portfolio(portfolio, path);
      if (format == "json") {
        print_json(out, Json(idea));
      } else {
        out << idea.id << '\n';
      }
      return kExitOk;
    }

    if (idea_list->parsed()) {
      check_format(format, {"text", "json"});
      const auto portfolio = load_portfolio(portfolio_path());
      if (format == "json") {
        print_json(out, Json(portfolio.ideas));
      } else {
        for (const auto& idea : portfolio.ideas) out << render::idea_line(idea) << '\n';
      }
      return kExitOk;
    }

    if (idea_show->parsed()) {
      const auto portfolio = load_portfolio(portfolio_path());
      print_json(out, Json(portfolio.get(idea_id)));
      return kExitOk;
    }

    if (score_add->parsed()) {
      const auto path = portfolio_path();
      auto portfolio = load_portfolio(path);
      card.submitted_at = env.clock();
      submit_scorecard(portfolio, idea_id, card, card.submitted_at);
      save_portfolio(portfolio, path);
      print_json(out, civps_payload(portfolio, idea_id));
      return kExitOk;
    }

    if (civps_cmd->parsed()) {
      check_format(format, {"text", "json"});
      Json payload;
      if (!score_lists.empty()) {
        if (!idea_id.empty()) throw UsageError("civps takes either an idea id or --scores, not both");
        std::vector<Scorecard> cards;
        for (std::size_t i = 0; i < score_lists.size(); ++i) {
          const auto scores = parse_score_list(score_lists[i]);
          Scorecard c;
          c.scorer_id = "scorer-" + std::to_string(i + 1);
          for (std::size_t d = 0; d < kDimensionCount; ++d) c.score(static_cast<Dimension>(d)) = scores[d];
          cards.push_back(c);
        }
        payload = civps_payload(cards, civps_threshold.value_or(kDefaultCivpsThreshold));
      } else {
        if (idea_id.empty()) throw UsageError("civps needs an idea id or --scores");
        payload = civps_payload(load_portfolio(portfolio_path()), idea_id);
      }
      if (format == "json") {
        print_json(out, payload);
      } else {
        out << render::civps_text(payload.at("civps").get<CIVPSResult>(),
                                  payload.at("gate").get<GateOutcome>());
      }
      return kExitOk;
    }

    if (gate_cmd->parsed()) {
      const auto path = portfolio_path();
      auto portfolio = load_portfolio(path);
      const auto event = gate_event(portfolio, idea_id, actor, env.clock());
      const Idea& idea = apply_event(portfolio, idea_id, event);
      save_portfolio(portfolio, path);
      out << idea.id << ": " << to_string(event.kind) << " -> " << to_string(idea.stage) << '\n';
      return kExitOk;
    }

    if (advance_cmd->parsed()) {
      const auto path = portfolio_path();
      auto portfolio = load_portfolio(path);
      FunnelEvent event;
      const auto kind = parse_event_kind(event_kind);
      if (!kind) throw UsageError("unknown event '" + event_kind + "'");
      event.kind = *kind;
      event.actor = actor;
      event.at = env.clock();
      switch (event.kind) {
        case FunnelEventKind::Categorize:
          if (event_category.empty()) {
            event.payload = portfolio.get(idea_id).category;
          } else {
            event.payload = category_arg(event_category);
          }
          break;
        case FunnelEventKind::Roadmap: {
          if (!event_effort || !event_impact) throw UsageError("roadmap needs --effort and --impact");
          EffortImpactEstimate estimate{*event_effort, *event_impact, {}, {}};
          const auto& c = portfolio.config;
          event.payload =
              RoadmapEntry{estimate, classify_quadrant(estimate, c.effort_threshold, c.impact_threshold)};
          break;
        }
        case FunnelEventKind::SubmitScores:
        case FunnelEventKind::GatePass:
        case FunnelEventKind::GateReturn:
          throw UsageError("use `score add` and `gate` for scoring events");
        default:
          if (!note.empty()) event.payload = Note{note};
          break;
      }
      const Idea& idea = apply_event(portfolio, idea_id, event);
      save_portfolio(portfolio, path);
      out << idea.id << ": " << to_string(event.kind) << " -> " << to_string(idea.stage) << '\n';
      return kExitOk;
    }

    if (history_cmd->parsed()) {
      print_json(out, history_payload(load_portfolio(portfolio_path()), idea_id));
      return kExitOk;
    }

    if (sim_cmd->parsed()) {
      check_format(format, {"text", "json", "histogram"});
      Json patch = Json::object();
      if (c_incident) patch["c_incident"] = *c_incident;
      if (p_incident) patch["p_incident"] = *p_incident;
      if (c_investment) patch["c_investment"] = *c_investment;
      if (r_investment) patch["r_investment"] = *r_investment;
      if (sim_n) patch["n"] = *sim_n;
      if (sim_seed) patch["seed"] = *sim_seed;
      if (!semantics_text.empty()) patch["semantics"] = semantics_arg(semantics_text);

      Json payload;
      if (!sim_idea.empty()) {
        const auto path = portfolio_path();
        auto portfolio = load_portfolio(path);
        payload = simulate_idea(portfolio, sim_idea, patch, env.clock(), sim_options);
        save_portfolio(portfolio, path);
      } else {
        if (!sim_seed) throw UsageError("--seed is required for reproducible output");
        const auto portfolio = optional_portfolio();
        const McConfig base = portfolio ? portfolio->config.mc_defaults : McConfig{};
        payload = simulate_payload(merge_mc_config(base, patch), sim_options);
      }

      if (format == "json") {
        print_json(out, payload);
      } else if (format == "histogram") {
        print_json(out, Json{{"histogram", payload.at("histogram")},
                             {"closed_form_expectation", payload.at("closed_form_expectation")},
                             {"mean_bv", payload.at("result").at("mean_bv")},
                             {"semantics", payload.at("result").at("semantics")}});
      } else {
        out << render::simulation_text(payload.at("config").get<McConfig>(),
                                       payload.at("result").get<McResult>());
      }
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      if (format == "text") format = "csv";
      check_format(format, {"csv", "json"});
      if (!sweep_semantics.empty()) {
        grid.semantics.clear();
        for (const auto& s : sweep_semantics) grid.semantics.push_back(semantics_arg(s));
      }
      const auto rows = sweep(grid, max_cells, sim_options);
      if (format == "json") {
        print_json(out, sweep_payload(grid, rows));
      } else {
        out << render::sweep_csv(rows);
      }
      return kExitOk;
    }

    if (quad_cmd->parsed()) {
      check_format(format, {"text", "json", "csv"});
      if (q_effort || q_impact) {
        if (!q_effort || !q_impact) throw UsageError("pass both --effort and --impact");
        std::optional<CIVPSResult> civps;
        if (q_civps) {
          civps = CIVPSResult{};
          civps->overall = *q_civps;
          civps->per_dimension_mean.fill(*q_civps);
          civps->scorer_count = 1;
        }
        const EffortImpactEstimate estimate{*q_effort, *q_impact, {}, {}};
        const auto category = category_arg(q_category);
        const Json payload = classify_payload(estimate, {effort_threshold, impact_threshold}, civps,
                                              category, top_tier);
        if (format == "json") {
          print_json(out, payload);
        } else if (format == "csv") {
          out << "effort,impact,decision,proceed\n"
              << *q_effort << ',' << *q_impact << ','
              << payload["decision"]["quadrant"].get<std::string>() << ','
              << payload["recommendation"]["proceed"].get<std::string>() << '\n';
        } else {
          const auto decision = classify_quadrant(estimate, effort_threshold, impact_threshold);
          out << render::classification_text(decision,
                                             recommend(decision, civps, category, top_tier));
        }
        return kExitOk;
      }
      const auto portfolio = load_portfolio(portfolio_path());
      const auto& c = portfolio.config;
      const auto points = quadrant_points(portfolio.ideas, {c.effort_threshold, c.impact_threshold});
      if (format == "json") {
        print_json(out, quadrant_payload(portfolio));
      } else if (format == "csv") {
        out << render::quadrant_csv(points);
      } else {
        out << render::quadrant_text(points);
      }
      return kExitOk;
    }

    if (alloc_cmd->parsed()) {
      check_format(format, {"text", "json", "csv"});
      const auto portfolio = load_portfolio(portfolio_path());
      if (format == "json") {
        print_json(out, allocation_payload(portfolio));
        return kExitOk;
      }
      const auto summary =
          allocation_summary(portfolio.ideas, portfolio.config.allocation_target,
                             {portfolio.config.include_returned_in_allocation});
      out << (format == "csv" ? render::allocation_csv(summary) : render::allocation_text(summary));
      return kExitOk;
    }

    if (report_cmd->parsed()) {
      if (format == "text") format = "markdown";
      check_format(format, {"markdown", "csv", "json"});
      const auto portfolio = load_portfolio(portfolio_path());
      const auto report = idea_report(portfolio, idea_id);
      if (format == "json") {
        print_json(out, Json(report));
      } else if (format == "csv") {
        out << render::report_csv(report);
      } else {
        out << render::report_markdown(report, portfolio.currency_label);
      }
      return kExitOk;
    }

    if (serve_cmd->parsed()) {
      if (bind.empty() && env.getenv) bind = env.getenv("FORESIGHT_BIND").value_or("");
      if (bind.empty()) bind = "127.0.0.1:8080";
      const auto address = parse_bind_address(bind);
      ServiceOptions options;
      options.simulation = sim_options;
      options.clock = env.clock;
      Service service(std::make_shared<JsonFileStore>(portfolio_path()), options);
      HttpServer server(service);
      const int port = server.bind(address);
      out << "listening on " << address.host << ':' << port << std::endl;
      g_server.store(&server);
      std::signal(SIGINT, stop_on_signal);
      std::signal(SIGTERM, stop_on_signal);
      server.listen();
      g_server.store(nullptr);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << machine_code(e.code()) << ": " << e.what() << '\n';
    return kExitValidation;
  }

  err << app.help();
  return kExitUsage;
}

}  // namespace foresight::cli
