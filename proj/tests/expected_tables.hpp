#pragma once

// The nine snapshots of the canonical plan, transcribed by hand with the
// default CichonMaxNames. Rows are S_1..S_4; below-sets use format_below.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cichon/constellation.hpp"

namespace expected {

struct Row {
  std::string below;
  std::string b;
  std::string d;
};

struct Table {
  std::string label;
  std::array<Row, 4> rows;
};

inline const std::string L4 = "lambda4b, lambda4d";
inline const std::string L3 = "lambda3b, " + L4 + ", lambda3d";
inline const std::string L2 = "lambda2b, lambda3b, " + L4 + ", lambda3d, lambda2d";

inline const std::vector<Table>& tables() {
  static const std::vector<Table> t = {
      {"gksmax",
       {{{"[theta1, theta_inf]", "theta1", "theta_inf"},
         {"[theta2, theta_inf]", "theta2", "theta_inf"},
         {"[theta3, theta_inf]", "theta3", "theta_inf"},
         {"[theta4, theta_inf]", "theta4", "theta_inf"}}}},
      {"chain d 4",
       {{{"[theta1, theta4], lambda4d", "lambda4d", "theta4"},
         {"[theta2, theta4], lambda4d", "lambda4d", "theta4"},
         {"[theta3, theta4], lambda4d", "lambda4d", "theta4"},
         {"theta4, lambda4d", "lambda4d", "theta4"}}}},
      {"chain b 4",
       {{{"[theta1, theta4m], " + L4, "lambda4b", "theta4m"},
         {"[theta2, theta4m], " + L4, "lambda4b", "theta4m"},
         {"[theta3, theta4m], " + L4, "lambda4b", "theta4m"},
         {L4, "lambda4b", "lambda4d"}}}},
      {"chain d 3",
       {{{"[theta1, theta3], " + L4 + ", lambda3d", "lambda4b", "theta3"},
         {"[theta2, theta3], " + L4 + ", lambda3d", "lambda4b", "theta3"},
         {"theta3, " + L4 + ", lambda3d", "lambda4b", "theta3"},
         {L4, "lambda4b", "lambda4d"}}}},
      {"chain b 3",
       {{{"[theta1, theta3m], " + L3, "lambda3b", "theta3m"},
         {"[theta2, theta3m], " + L3, "lambda3b", "theta3m"},
         {L3, "lambda3b", "lambda3d"},
         {L4, "lambda4b", "lambda4d"}}}},
      {"chain d 2",
       {{{"[theta1, theta2], " + L3 + ", lambda2d", "lambda3b", "theta2"},
         {"theta2, " + L3 + ", lambda2d", "lambda3b", "theta2"},
         {L3, "lambda3b", "lambda3d"},
         {L4, "lambda4b", "lambda4d"}}}},
      {"chain b 2",
       {{{"[theta1, theta2m], " + L2, "lambda2b", "theta2m"},
         {L2, "lambda2b", "lambda2d"},
         {L3, "lambda3b", "lambda3d"},
         {L4, "lambda4b", "lambda4d"}}}},
      {"chain d 1",
       {{{"theta1, " + L2 + ", lambda1d", "lambda2b", "theta1"},
         {L2, "lambda2b", "lambda2d"},
         {L3, "lambda3b", "lambda3d"},
         {L4, "lambda4b", "lambda4d"}}}},
      {"chain b 1",
       {{{"lambda1b, " + L2 + ", lambda1d", "lambda1b", "lambda1d"},
         {L2, "lambda2b", "lambda2d"},
         {L3, "lambda3b", "lambda3d"},
         {L4, "lambda4b", "lambda4d"}}}},
  };
  return t;
}

/// The ten-value assignment of the final model.
inline std::map<cichon::Entry, cichon::CardinalName> final_assignment() {
  using cichon::Entry;
  return {{Entry::addN, "lambda1b"}, {Entry::covN, "lambda2b"}, {Entry::addM, "lambda3b"},
          {Entry::b, "lambda3b"},    {Entry::covM, "lambda4d"}, {Entry::nonM, "lambda4b"},
          {Entry::d, "lambda3d"},    {Entry::cofM, "lambda3d"}, {Entry::nonN, "lambda2d"},
          {Entry::cofN, "lambda1d"}, {Entry::c, "lambdac"}};
}

}  // namespace expected
