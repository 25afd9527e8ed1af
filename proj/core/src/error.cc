// Copyright 2026 The labelcrypt Authors.
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

#include "labelcrypt/error.h"

namespace labelcrypt {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kNotInSubgroup:
      return "NotInSubgroup";
    case ErrorCode::kParameterSearchExhausted:
      return "ParameterSearchExhausted";
    case ErrorCode::kTooManyKeys:
      return "TooManyKeys";
    case ErrorCode::kKeySpaceExhausted:
      return "KeySpaceExhausted";
    case ErrorCode::kLabelOutOfRange:
      return "LabelOutOfRange";
    case ErrorCode::kBadLength:
      return "BadLength";
    case ErrorCode::kTooManyClasses:
      return "TooManyClasses";
    case ErrorCode::kDegenerateFake:
      return "DegenerateFake";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kUnknownRecord:
      return "UnknownRecord";
    case ErrorCode::kIo:
      return "IoError";
    case ErrorCode::kFormat:
      return "FormatError";
  }
  return "Unknown";
}

}  // namespace labelcrypt
