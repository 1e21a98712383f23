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

#include <cstdlib>

#include <fmt/format.h>

#include "httplib.h"

#include "formality/error.h"
#include "formality/llm_gateway.h"

namespace formality {

HttpChatTransport::HttpChatTransport(const GatewayConfig& config) : config_(config) {
  config_.Validate();
  const char* credential = std::getenv(config_.credential_env.c_str());
  if (credential == nullptr || *credential == '\0') {
    throw ConfigurationError(
        fmt::format("credential variable {} is not set", config_.credential_env));
  }
  credential_ = credential;
  const std::string& url = config_.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigurationError(fmt::format("endpoint '{}' has no scheme", url));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

ChatResponse HttpChatTransport::Send(const ChatRequest& request) {
  httplib::Client client(origin_);
  const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout));

  nlohmann::json body = {
      {"model", request.model},
      {"temperature", request.temperature},
      {"messages",
       {{{"role", "system"}, {"content", request.rendered.system}},
        {{"role", "user"}, {"content", request.rendered.user}}}},
  };
  httplib::Headers headers = {{"Authorization", "Bearer " + credential_}};
  auto result = client.Post(path_, headers, body.dump(), "application/json");
  if (!result) {
    throw TransportError(fmt::format("{}: {}", config_.endpoint, httplib::to_string(result.error())));
  }
  ChatResponse response{result->status, result->body};
  if (result->status != 200) return response;
  try {
    const auto parsed = nlohmann::json::parse(result->body);
    response.content = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    // A 200 without the expected shape is treated as a server fault.
    return {502, fmt::format("malformed completion body: {}", e.what())};
  }
  return response;
}

}  // namespace formality
