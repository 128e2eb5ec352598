#include "socv/pipeline.hpp"

#include "socv/parser.hpp"

namespace socv {

LoadedModel::LoadedModel(TypedProgram tp) : typed(std::move(tp)) { elab = elaborate(typed); }

std::unique_ptr<LoadedModel> load_model_file(const std::string& path) {
  return std::make_unique<LoadedModel>(check_program(parse_file(path)));
}

std::unique_ptr<LoadedModel> load_model_source(std::string_view source, std::string name) {
  return std::make_unique<LoadedModel>(check_program(parse_source(source, std::move(name))));
}

}  // namespace socv
