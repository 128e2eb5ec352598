#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "socv/elaborate.hpp"
#include "socv/typecheck.hpp"

namespace socv {

// A parsed, checked and elaborated model. `elab` points into `typed`, so the
// bundle is heap-allocated and never moved.
struct LoadedModel {
  TypedProgram typed;
  Elaboration elab;

  LoadedModel(const LoadedModel&) = delete;
  LoadedModel& operator=(const LoadedModel&) = delete;
  explicit LoadedModel(TypedProgram tp);
};

// Parse + type check + elaborate. Throws CompileError.
std::unique_ptr<LoadedModel> load_model_file(const std::string& path);
std::unique_ptr<LoadedModel> load_model_source(std::string_view source, std::string name = "<input>");

}  // namespace socv
