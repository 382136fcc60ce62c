#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lcdepth/classifier.hpp"
#include "lcdepth/errors.hpp"
#include "lcdepth/io.hpp"

namespace lcdepth {

namespace {

constexpr const char* kModelSchema = "lcdd-ddmodel/1";

nlohmann::json sample_to_json(const SphericalSample& sample) {
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto p = sample.point(i);
    pts.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return nlohmann::json{{"dim", sample.dim()}, {"points", std::move(pts)}};
}

SphericalSample sample_from_json(const nlohmann::json& j) {
  SphericalSample out;
  for (const auto& p : j.at("points")) {
    out.push_back(UnitVector(p.get<std::vector<double>>()));
  }
  if (out.empty() || out.dim() != j.at("dim").get<std::size_t>()) {
    throw DataError("model file: inconsistent sample block");
  }
  return out;
}

}  // namespace

std::string serialize_model(const DDModel& model) {
  nlohmann::json j;
  j["schema"] = kModelSchema;
  j["beta"] = model.beta;
  j["separator"] = {
      {"degree", model.separator.degree()},
      {"coeffs", model.separator.coeffs},
      {"orientation",
       model.separator.orientation == Orientation::Class2Above ? "class2_above" : "class1_above"},
  };
  j["priors"] = {model.priors.pi1, model.priors.pi2};
  j["train1"] = sample_to_json(model.train1);
  j["train2"] = sample_to_json(model.train2);
  return j.dump(2) + "\n";
}

DDModel deserialize_model(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file: not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != kModelSchema) {
      throw DataError("model file: unsupported schema " + j.at("schema").get<std::string>());
    }
    DDModel model;
    model.beta = j.at("beta").get<double>();
    const auto& sep = j.at("separator");
    model.separator.coeffs = sep.at("coeffs").get<std::vector<double>>();
    const auto orientation = sep.at("orientation").get<std::string>();
    if (orientation == "class2_above") {
      model.separator.orientation = Orientation::Class2Above;
    } else if (orientation == "class1_above") {
      model.separator.orientation = Orientation::Class1Above;
    } else {
      throw DataError("model file: unknown orientation " + orientation);
    }
    if (model.separator.degree() != sep.at("degree").get<std::size_t>()) {
      throw DataError("model file: degree does not match coefficient count");
    }
    const auto priors = j.at("priors").get<std::vector<double>>();
    if (priors.size() != 2) throw DataError("model file: priors must have 2 entries");
    model.priors = {priors[0], priors[1]};
    model.priors.validate();
    model.train1 = sample_from_json(j.at("train1"));
    model.train2 = sample_from_json(j.at("train2"));
    if (model.train1.dim() != model.train2.dim()) {
      throw DataError("model file: training classes differ in dimension");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file: missing or malformed field: ") + e.what());
  }
}

void save_model(const DDModel& model, const std::string& path) {
  atomic_write_text(path, serialize_model(model));
}

DDModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace lcdepth
