// Copyright 2026 The cogdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COGDIST_AUDIT_SERVER_H_
#define COGDIST_AUDIT_SERVER_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "cogdist/audit_session.h"

namespace httplib {
class Server;
}

namespace cogdist {

struct ServerOptions {
  std::string host = "127.0.0.1";  // loopback unless asked otherwise
  int port = 8765;                 // 0 = pick a free port
  std::string cors_origin = "http://localhost:5173";
};

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

// HTTP front end of an AuditSession.
//
//   POST  /recognize       {text, DT?, weighted?, LS?}   -> recognition JSON
//   GET   /model           ?distortion=&q=&offset=&limit= -> entry page
//   PATCH /model/entries   {distortion, ngram, weight|null}
//   POST  /model/undo
//   POST  /model/save      {dir?}
//   GET   /model/diff
//
// Errors: 400 malformed request, 404 unknown distortion or route,
// 409 no model loaded, 422 model invariant violation.
class AuditServer {
 public:
  AuditServer(AuditSession& session, ServerOptions options);
  ~AuditServer();

  AuditServer(const AuditServer&) = delete;
  AuditServer& operator=(const AuditServer&) = delete;

  // Routing without sockets; the HTTP handlers delegate here.
  HttpResponse handle(std::string_view method, std::string_view path,
                      const std::map<std::string, std::string>& query,
                      std::string_view body);

  // Binds the listening socket and returns the bound port.
  int bind();
  // Serves until stop(); call bind() first.
  void serve();
  void stop();

 private:
  HttpResponse recognize(std::string_view body);
  HttpResponse get_model(const std::map<std::string, std::string>& query);
  HttpResponse patch_entry(std::string_view body);
  HttpResponse undo();
  HttpResponse save(std::string_view body);
  HttpResponse diff();

  AuditSession& session_;
  ServerOptions options_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace cogdist

#endif  // COGDIST_AUDIT_SERVER_H_
