// Copyright 2026 The fidshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef FIDSHARE_STATUS_MACROS_H_
#define FIDSHARE_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"

#define FIDSHARE_STATUS_CONCAT_INNER(a, b) a##b
#define FIDSHARE_STATUS_CONCAT(a, b) FIDSHARE_STATUS_CONCAT_INNER(a, b)

#define FIDSHARE_RETURN_IF_ERROR(expr)     \
  do {                                     \
    ::absl::Status _fidshare_s = (expr);   \
    if (!_fidshare_s.ok()) return _fidshare_s; \
  } while (0)

// Assigns the value of a StatusOr expression to `lhs` or returns its error.
// `lhs` may be a declaration ("auto x") or an existing lvalue.
#define FIDSHARE_ASSIGN_OR_RETURN(lhs, expr) \
  FIDSHARE_ASSIGN_OR_RETURN_IMPL(            \
      FIDSHARE_STATUS_CONCAT(_fidshare_or_, __LINE__), lhs, expr)

#define FIDSHARE_ASSIGN_OR_RETURN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                                   \
  if (!tmp.ok()) return tmp.status();                  \
  lhs = *std::move(tmp)

#endif  // FIDSHARE_STATUS_MACROS_H_
