#pragma once

#include <httplib.h>

#include "montyhall/service/session.hpp"

namespace montyhall::service {

/// Installs the /api/v1 routes:
///   POST /api/v1/session                    create (host spec, prior, ...)
///   POST /api/v1/session/{id}/pick          {"door": 1..3}
///   POST /api/v1/session/{id}/decision      "stay" | "switch" | {"decision": ...}
///   GET  /api/v1/session/{id}               observable state, belief trace, stats
///   GET  /api/v1/analytics?p=..&q=..        exact values
/// Errors map to 400 (bad input), 404 (unknown session), 409 (out of phase),
/// each with {"schema_version", "error": {"code", "message"}}.
void register_routes(httplib::Server& server, SessionManager& sessions);

}  // namespace montyhall::service
