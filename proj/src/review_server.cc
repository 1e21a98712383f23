// Copyright 2026 The Formality Spectrum Authors.
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

#include "formality/review_server.h"

#include <fmt/format.h>

#include "httplib.h"

#include "formality/records.h"

namespace formality {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kJson = "application/json";

void Reply(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void ReplyError(httplib::Response& res, int status, const std::string& message) {
  Reply(res, status, {{"error", message}});
}

// Maps store exceptions onto status codes.
template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ReviewError& e) {
    ReplyError(res, e.http_status(), e.what());
  } catch (const json::exception& e) {
    ReplyError(res, 422, fmt::format("malformed body: {}", e.what()));
  } catch (const DataError& e) {
    ReplyError(res, 422, e.what());
  } catch (const std::exception& e) {
    ReplyError(res, 500, e.what());
  }
}

json ParseBody(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ReviewError(ReviewError::Code::kInvalid, fmt::format("body is not JSON: {}", e.what()));
  }
}

}  // namespace

ReviewServer::ReviewServer(std::shared_ptr<ReviewStore> store)
    : store_(std::move(store)), server_(std::make_unique<httplib::Server>()) {
  Routes();
}

ReviewServer::~ReviewServer() { Stop(); }

int ReviewServer::Bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  if (!server_->bind_to_port(host, port)) {
    throw Error(fmt::format("cannot bind {}:{}", host, port));
  }
  return port;
}

void ReviewServer::Listen() { server_->listen_after_bind(); }

void ReviewServer::Stop() {
  if (server_) server_->stop();
}

void ReviewServer::Routes() {
  auto& s = *server_;

  s.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, {{"ok", true}});
  });

  s.Post("/annotators", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const json body = ParseBody(req);
      const std::string id = body.value("id", "");
      store_->RegisterAnnotator(id);
      Reply(res, 200, {{"id", id}});
    });
  });

  s.Get("/queue/next", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      if (!req.has_param("annotator")) {
        throw ReviewError(ReviewError::Code::kInvalid, "annotator parameter required");
      }
      const std::string annotator = req.get_param_value("annotator");
      const auto item = store_->NextItem(annotator);
      const auto [done, total] = store_->Progress(annotator);
      Reply(res, 200,
            {{"item", item ? ItemToJson(*item) : ordered_json(nullptr)},
             {"progress", {{"done", done}, {"total", total}}}});
    });
  });

  s.Get(R"(/items/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 200, ItemToJson(store_->GetItem(req.matches[1]))); });
  });

  s.Post(R"(/items/([^/]+)/decision)",
         [this](const httplib::Request& req, httplib::Response& res) {
           Guarded(res, [&] {
             const std::string id = req.matches[1];
             store_->GetItem(id);  // 404 before body validation
             const json body = ParseBody(req);
             if (!body.is_object() || !body.contains("annotator") ||
                 !body.at("annotator").is_string()) {
               throw ReviewError(ReviewError::Code::kInvalid, "annotator required");
             }
             const Verdict verdict = ParseVerdict(body);
             Reply(res, 200,
                   ItemToJson(store_->SubmitDecision(id, body.at("annotator"), verdict)));
           });
         });

  s.Post(R"(/items/([^/]+)/resolve)",
         [this](const httplib::Request& req, httplib::Response& res) {
           Guarded(res, [&] {
             const std::string id = req.matches[1];
             store_->GetItem(id);
             const json body = ParseBody(req);
             const Verdict verdict = ParseVerdict(body);
             Reply(res, 200,
                   ItemToJson(store_->Resolve(id, verdict, body.value("resolver", ""))));
           });
         });

  s.Get("/reports/agreement", [this](const httplib::Request&, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 200, AgreementToJson(store_->Agreement())); });
  });

  s.Post("/enqueue", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const json body = ParseBody(req);
      if (!body.is_object() || !body.contains("path") || !body.at("path").is_string()) {
        throw ReviewError(ReviewError::Code::kInvalid, "path to a triples file required");
      }
      const std::string path = body.at("path");
      if (!std::filesystem::exists(path)) {
        throw ReviewError(ReviewError::Code::kNotFound, fmt::format("no such file '{}'", path));
      }
      const std::size_t before = store_->size();
      const std::size_t after = store_->Enqueue(ReadTriples(path));
      Reply(res, 200, {{"added", after - before}, {"queue_size", after}});
    });
  });

  s.Get("/export", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const std::string status =
          req.has_param("status") ? req.get_param_value("status") : "accepted";
      if (status != "accepted") {
        throw ReviewError(ReviewError::Code::kInvalid,
                          fmt::format("unsupported export status '{}'", status));
      }
      res.status = 200;
      res.set_content(SerializeRecords(store_->ExportAccepted()), "application/x-ndjson");
    });
  });
}

}  // namespace formality
