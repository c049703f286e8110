#include "foresight/service.hpp"

#include <httplib.h>

#include <charconv>
#include <vector>

#include "foresight/funnel.hpp"
#include "foresight/operations.hpp"
#include "foresight/render.hpp"

namespace foresight {

namespace {

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const std::size_t end = path.find('/', start);
    const std::string part = path.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!part.empty()) parts.push_back(part);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

ApiResponse json_response(int status, const Json& body) {
  return {status, "application/json", body.dump()};
}

ApiResponse error_response(const ApiError& error) {
  return json_response(error.status, error.to_json());
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json(nullptr);
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("request body is not valid JSON: ") + e.what());
  }
}

std::string header(const ApiRequest& request, const std::string& name) {
  for (const auto& [key, value] : request.headers) {
    if (key.size() == name.size() &&
        std::equal(key.begin(), key.end(), name.begin(),
                   [](char a, char b) { return std::tolower(a) == std::tolower(b); })) {
      return value;
    }
  }
  return {};
}

std::size_t query_size(const ApiRequest& request, const std::string& key, std::size_t fallback) {
  auto it = request.query.find(key);
  if (it == request.query.end()) return fallback;
  std::size_t value = 0;
  const auto& text = it->second;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::Validation, "expected a non-negative integer", "/query/" + key);
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return 400;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::IllegalTransition: return 409;
    case ErrorCode::Consistency: return 422;
    case ErrorCode::Config: return 400;
    case ErrorCode::Parse: return 400;
    case ErrorCode::MissingFile:
    case ErrorCode::UnknownVersion:
    case ErrorCode::Invariant:
    case ErrorCode::Io: return 500;
  }
  return 500;
}

ApiError ApiError::from(const Error& error) {
  return {http_status(error.code()), std::string(machine_code(error.code())), error.message(),
          error.path()};
}

Json ApiError::to_json() const {
  return Json{{"error", Json{{"status", status},
                             {"code", code},
                             {"message", message},
                             {"path", path.empty() ? Json(nullptr) : Json(path)}}}};
}

Timestamp system_now() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

// ---------------------------------------------------------------------------

Service::Service(std::shared_ptr<PortfolioStore> store, ServiceOptions options)
    : store_(std::move(store)), options_(std::move(options)) {
  snapshot_ = std::make_shared<const PortfolioFile>(store_->load());
}

std::shared_ptr<const PortfolioFile> Service::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

template <class Fn>
ApiResponse Service::mutate(int status, Fn&& fn) {
  std::lock_guard writer(writer_);
  auto working = std::make_shared<PortfolioFile>(*snapshot());
  Json payload = fn(*working);
  store_->save(*working);
  {
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(working);
  }
  return json_response(status, payload);
}

ApiResponse Service::handle(const ApiRequest& request) {
  try {
    return route(request);
  } catch (const Error& e) {
    return error_response(ApiError::from(e));
  } catch (const std::exception& e) {
    return error_response({500, "INTERNAL", e.what(), {}});
  }
}

ApiResponse Service::route(const ApiRequest& request) {
  const auto parts = split_path(request.path);
  const std::string& method = request.method;
  const bool get = method == "GET";
  const bool post = method == "POST";
  const auto now = [this] { return options_.clock(); };

  if (parts.size() == 1 && parts[0] == "healthz" && get) {
    return json_response(200, Json{{"status", "ok"}});
  }

  if (parts.size() == 1 && parts[0] == "ideas") {
    if (get) {
      const auto snap = snapshot();
      const std::size_t offset = query_size(request, "offset", 0);
      const std::size_t limit = query_size(request, "limit", snap->ideas.size());
      Json ideas = Json::array();
      for (std::size_t i = offset; i < snap->ideas.size() && ideas.size() < limit; ++i) {
        ideas.push_back(snap->ideas[i]);
      }
      return json_response(200, Json{{"ideas", ideas}, {"total", snap->ideas.size()},
                                     {"offset", offset}, {"limit", limit}});
    }
    if (post) {
      const NewIdea req = parse_body(request.body).get<NewIdea>();
      return mutate(201, [&](PortfolioFile& p) { return Json(create_idea(p, req, now())); });
    }
  }

  if (parts.size() >= 2 && parts[0] == "ideas") {
    const std::string& id = parts[1];

    if (parts.size() == 2 && get) return json_response(200, Json(snapshot()->get(id)));

    if (parts.size() == 3) {
      const std::string& leaf = parts[2];
      if (leaf == "civps" && get) return json_response(200, civps_payload(*snapshot(), id));
      if (leaf == "history" && get) return json_response(200, history_payload(*snapshot(), id));
      if (leaf == "report" && get) {
        const auto report = idea_report(*snapshot(), id);
        const auto fmt = request.query.count("format") ? request.query.at("format") : "json";
        if (fmt == "markdown") {
          return {200, "text/markdown", render::report_markdown(report, snapshot()->currency_label)};
        }
        if (fmt == "csv") return {200, "text/csv", render::report_csv(report)};
        if (fmt != "json") {
          throw Error(ErrorCode::Validation, "format must be json, markdown or csv", "/query/format");
        }
        return json_response(200, Json(report));
      }
      if (leaf == "transitions" && get) {
        const auto snap = snapshot();
        const Idea& idea = snap->get(id);
        return json_response(200, Json{{"idea_id", idea.id},
                                       {"stage", idea.stage},
                                       {"legal_events", legal_events(idea.stage)}});
      }

      if (leaf == "scorecards" && post) {
        Json body = parse_body(request.body);
        jsonio::expect_object(body);
        const std::string scorer = header(request, "X-Scorer-Id");
        if (!body.contains("scorer_id") && !scorer.empty()) body["scorer_id"] = scorer;
        if (body.contains("scorer_id") && !scorer.empty() && body["scorer_id"] != scorer) {
          throw Error(ErrorCode::Validation, "scorer_id does not match X-Scorer-Id", "/scorer_id");
        }
        if (!body.contains("submitted_at")) body["submitted_at"] = format_timestamp(now());
        const auto card = body.get<Scorecard>();
        return mutate(201, [&](PortfolioFile& p) {
          return Json(submit_scorecard(p, id, card, card.submitted_at));
        });
      }

      if (leaf == "advance" && post) {
        Json body = parse_body(request.body);
        jsonio::expect_object(body);
        if (!body.contains("at")) body["at"] = format_timestamp(now());
        if (!body.contains("actor")) {
          const std::string actor = header(request, "X-Actor");
          body["actor"] = actor.empty() ? "api" : actor;
        }
        const auto event = body.get<FunnelEvent>();
        return mutate(200, [&](PortfolioFile& p) { return Json(apply_event(p, id, event)); });
      }

      if (leaf == "simulate" && post) {
        const Json patch = parse_body(request.body);
        return mutate(200, [&](PortfolioFile& p) {
          return simulate_idea(p, id, patch, now(), options_.simulation);
        });
      }
    }
  }

  if (parts.size() == 1 && parts[0] == "simulate" && post) {
    const McConfig config =
        merge_mc_config(snapshot()->config.mc_defaults, parse_body(request.body));
    return json_response(200, simulate_payload(config, options_.simulation));
  }

  if (parts.size() == 2 && parts[0] == "simulate" && parts[1] == "sweep" && post) {
    const auto grid = parse_body(request.body).get<SweepGrid>();
    const auto rows = sweep(grid, snapshot()->config.sweep_max_cells, options_.simulation);
    return json_response(200, sweep_payload(grid, rows));
  }

  if (parts.size() == 2 && parts[0] == "portfolio" && get) {
    if (parts[1] == "allocation") return json_response(200, allocation_payload(*snapshot()));
    if (parts[1] == "quadrants") return json_response(200, quadrant_payload(*snapshot()));
  }

  return error_response({404, "NOT_FOUND", "no route for " + method + " " + request.path, {}});
}

// ---------------------------------------------------------------------------

BindAddress parse_bind_address(const std::string& text) {
  BindAddress out;
  std::string port_text = text;
  if (const auto colon = text.rfind(':'); colon != std::string::npos) {
    if (colon > 0) out.host = text.substr(0, colon);
    port_text = text.substr(colon + 1);
  }
  int port = -1;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port < 0 || port > 65535) {
    throw Error(ErrorCode::Config, "invalid bind address '" + text + "'");
  }
  out.port = port;
  return out;
}

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      ApiRequest api;
      api.method = req.method;
      api.path = req.path;
      api.body = req.body;
      for (const auto& [k, v] : req.params) api.query[k] = v;
      for (const auto& [k, v] : req.headers) api.headers[k] = v;
      const ApiResponse out = service.handle(api);
      res.status = out.status;
      res.set_content(out.body, out.content_type);
    };
    server.Get(".*", forward);
    server.Post(".*", forward);
    server.Put(".*", forward);
    server.Delete(".*", forward);
    server.Patch(".*", forward);
  }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const BindAddress& address) {
  if (address.port == 0) {
    const int port = impl_->server.bind_to_any_port(address.host);
    if (port < 0) throw Error(ErrorCode::Io, "cannot bind " + address.host);
    return port;
  }
  if (!impl_->server.bind_to_port(address.host, address.port)) {
    throw Error(ErrorCode::Io,
                "cannot bind " + address.host + ":" + std::to_string(address.port));
  }
  return address.port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace foresight
