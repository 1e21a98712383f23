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

// HTTP front end for ReviewStore.
//
//   GET  /queue/next?annotator=ID
//   POST /items/{id}/decision   {annotator, verdict, to_level?, edited_text?}
//   POST /items/{id}/resolve    {verdict, to_level?, resolver?}
//   GET  /items/{id}
//   GET  /reports/agreement
//   POST /enqueue               {path} (triples file)
//   GET  /export?status=accepted
//   POST /annotators            {id}
//   GET  /healthz

#ifndef FORMALITY_REVIEW_SERVER_H_
#define FORMALITY_REVIEW_SERVER_H_

#include <memory>
#include <string>

#include "formality/review.h"

namespace httplib {
class Server;
}

namespace formality {

class ReviewServer {
 public:
  explicit ReviewServer(std::shared_ptr<ReviewStore> store);
  ~ReviewServer();

  // Binds and returns the port; port 0 picks a free one.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  void Listen();
  void Stop();

 private:
  void Routes();

  std::shared_ptr<ReviewStore> store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace formality

#endif  // FORMALITY_REVIEW_SERVER_H_
