#pragma once

#include "qdisc/discrimination.hpp"
#include "qdisc/povm.hpp"

#include <json.hpp>

#include <string>

namespace qdisc {

struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Ensemble documents: {"dim": d, "states": [{"p": .., "matrix": rows} |
// {"p": .., "bloch": [x,y,z]}]}. A matrix is a list of rows, each row a
// list of [re, im] pairs. The "bloch" form is dim-2 only and denotes
// (1 + v.sigma)/2 with |v| <= 1.
WeightedEnsemble ensembleFromJson(const nlohmann::json& doc);
nlohmann::json ensembleToJson(const WeightedEnsemble& e);

// POVM documents: {"dim": d, "elements": [matrix, ...]}.
Povm povmFromJson(const nlohmann::json& doc);
nlohmann::json povmToJson(const Povm& p);

// Nested POVM documents: {"depth": u, "dim": d, "nodes": [{"path": "01",
// "b0": flat, "b1": flat}, ...]} with flat row-major [re, im] pair lists.
NestedPovm nestedPovmFromJson(const nlohmann::json& doc);
nlohmann::json nestedPovmToJson(const NestedPovm& n);

Matrix matrixFromJson(const nlohmann::json& rows);
nlohmann::json matrixToJson(const Matrix& m);

// File wrappers; throw IoError on filesystem failures and ParseError on
// malformed documents.
WeightedEnsemble readEnsemble(const std::string& path);
Povm readPovm(const std::string& path);
NestedPovm readNestedPovm(const std::string& path);
void writeJsonFile(const std::string& path, const nlohmann::json& doc);
nlohmann::json readJsonFile(const std::string& path);

}  // namespace qdisc
