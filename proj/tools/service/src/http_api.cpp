#include "montyhall/service/http_api.hpp"

#include "montyhall/errors.hpp"

namespace montyhall::service {

using nlohmann::json;

namespace {

int status_for(const Error& e) {
  std::string_view code = e.code();
  if (code == "UnknownSession") return 404;
  if (code == "PhaseViolation" || code == "NoChoiceAvailable") return 409;
  return 400;
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(body.dump(), "application/json");
}

json error_body(std::string_view code, std::string_view message) {
  return {{"schema_version", kSchemaVersion}, {"error", {{"code", code}, {"message", message}}}};
}

template <class Handler>
void guarded(httplib::Response& res, Handler&& handler, int success = 200) {
  try {
    reply(res, success, handler());
  } catch (const Error& e) {
    reply(res, status_for(e), error_body(e.code(), e.what()));
  } catch (const json::exception& e) {
    reply(res, 400, error_body("InvalidParameter", e.what()));
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded()) throw InvalidParameter("request body is not valid JSON");
  return body;
}

Probability query_probability(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return Probability(1, 2);
  return Probability::parse(req.get_param_value(key));
}

}  // namespace

void register_routes(httplib::Server& server, SessionManager& sessions) {
  server.Post("/api/v1/session", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.create(parse_body(req)); }, 201);
  });
  server.Post(R"(/api/v1/session/([0-9a-f]+)/pick)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.pick(req.matches[1], parse_body(req)); });
  });
  server.Post(R"(/api/v1/session/([0-9a-f]+)/decision)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.decide(req.matches[1], parse_body(req)); });
  });
  server.Get(R"(/api/v1/session/([0-9a-f]+))", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return sessions.get(req.matches[1]); });
  });
  server.Get("/api/v1/analytics", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return analytics_view(query_probability(req, "p"), query_probability(req, "q")); });
  });
  server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

}  // namespace montyhall::service
