#include "mixtime/kernel_io.hpp"

#include <fstream>
#include <vector>

#include <json.hpp>

namespace mixtime {

MarkovKernel parse_kernel_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("kernel file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("d") || !doc.contains("rows")) {
        throw std::invalid_argument("kernel file must be an object with \"d\" and \"rows\"");
    }
    int d = 0;
    std::vector<std::vector<double>> rows;
    try {
        d = doc.at("d").get<int>();
        rows = doc.at("rows").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed kernel file: ") + e.what());
    }
    if (static_cast<int>(rows.size()) != d) {
        throw std::invalid_argument("kernel file \"d\" does not match the number of rows");
    }
    return MarkovKernel(rows);
}

std::string kernel_to_json_text(const MarkovKernel& kernel) {
    nlohmann::json doc;
    doc["d"] = kernel.dim();
    doc["rows"] = kernel.rows();
    return doc.dump(2) + "\n";
}

MarkovKernel load_kernel(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open kernel file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_kernel_json(text);
}

void save_kernel(const MarkovKernel& kernel, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write kernel file: " + path.string());
    out << kernel_to_json_text(kernel);
}

}  // namespace mixtime
