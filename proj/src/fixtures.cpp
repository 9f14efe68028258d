#include <map>
#include <string>
#include <vector>

#include "conefix/errors.hpp"

namespace conefix {

namespace {

// The worked example: T x = x^2, S x = x/2 against d(x,y) = |x-y| e^t.
const std::string kExample32 = R"json({
  "space": {
    "grid_size": 33,
    "weight": "exp(t)",
    "base": "absolute_difference",
    "cone_margin": 1e-12,
    "normal_constant": 1.0
  },
  "maps": {
    "T": "x^2",
    "S": "x/2",
    "capabilities": {
      "injective": true,
      "continuous": true,
      "subsequentially_convergent": true,
      "sequentially_convergent": true
    }
  },
  "contraction": { "kind": "TK1", "constant": 0.3333333333333333 },
  "solve": {
    "x0": [1.0],
    "domain": [[-10.0, 10.0]],
    "tol": 1e-9,
    "max_iter": 10000,
    "extra_starts": [[-5.0], [0.3]]
  }
})json";

const std::string kExample32Tk2 = R"json({
  "space": {
    "grid_size": 33,
    "weight": "exp(t)",
    "base": "absolute_difference",
    "cone_margin": 1e-12,
    "normal_constant": 1.0
  },
  "maps": {
    "T": "x^2",
    "S": "x/2",
    "capabilities": {
      "injective": true,
      "continuous": true,
      "subsequentially_convergent": true,
      "sequentially_convergent": true
    }
  },
  "contraction": { "kind": "TK2", "constant": 0.200001 },
  "solve": {
    "x0": [1.0],
    "domain": [[-10.0, 10.0]],
    "tol": 1e-9,
    "max_iter": 10000,
    "extra_starts": [[-5.0], [0.3]]
  }
})json";

const std::string kKannanXOver5 = R"json({
  "space": {
    "grid_size": 33,
    "weight": "exp(t)",
    "base": "absolute_difference",
    "cone_margin": 1e-12,
    "normal_constant": 1.0
  },
  "maps": {
    "T": "x",
    "S": "x/5",
    "capabilities": {
      "injective": true,
      "continuous": true,
      "subsequentially_convergent": true,
      "sequentially_convergent": true
    }
  },
  "contraction": { "kind": "K1", "constant": 0.25 },
  "solve": {
    "x0": [1.0],
    "domain": [[-10.0, 10.0]],
    "tol": 1e-9,
    "max_iter": 10000,
    "extra_starts": [[-3.0], [8.5]]
  }
})json";

const std::string kConstantMap = R"json({
  "space": {
    "grid_size": 33,
    "weight": "exp(t)",
    "base": "absolute_difference",
    "cone_margin": 1e-12,
    "normal_constant": 1.0
  },
  "maps": {
    "T": "x",
    "S": "constant(0.7)",
    "capabilities": {
      "injective": true,
      "continuous": true,
      "subsequentially_convergent": true,
      "sequentially_convergent": true
    }
  },
  "contraction": { "kind": "TK1", "constant": 0.0 },
  "solve": {
    "x0": [3.0],
    "domain": [[-10.0, 10.0]],
    "tol": 1e-9,
    "max_iter": 10000,
    "extra_starts": [[-2.0], [9.0]]
  }
})json";

// Membership test widened to coordinates >= -0.1: P3 fails, the axiom suite
// must find a counterexample.
const std::string kCorruptedCone = R"json({
  "space": {
    "grid_size": 33,
    "weight": "exp(t)",
    "base": "absolute_difference",
    "cone_margin": 1e-12,
    "normal_constant": 1.0,
    "membership_slack": 0.1
  },
  "maps": {
    "T": "x^2",
    "S": "x/2",
    "capabilities": {
      "injective": true,
      "continuous": true,
      "subsequentially_convergent": true,
      "sequentially_convergent": true
    }
  },
  "contraction": { "kind": "TK1", "constant": 0.3333333333333333 },
  "solve": {
    "x0": [1.0],
    "domain": [[-10.0, 10.0]],
    "tol": 1e-9,
    "max_iter": 10000,
    "extra_starts": []
  }
})json";

// Sign-changing weight: d(x,y) leaves the cone for x != y, so d1 fails.
const std::string kBadWeight = R"json({
  "space": {
    "grid_size": 33,
    "weight": "1 - 2*t",
    "base": "absolute_difference",
    "cone_margin": 1e-12,
    "normal_constant": 1.0
  },
  "maps": {
    "T": "x^2",
    "S": "x/2",
    "capabilities": {
      "injective": true,
      "continuous": true,
      "subsequentially_convergent": true,
      "sequentially_convergent": true
    }
  },
  "contraction": { "kind": "TK1", "constant": 0.3333333333333333 },
  "solve": {
    "x0": [1.0],
    "domain": [[-10.0, 10.0]],
    "tol": 1e-9,
    "max_iter": 10000,
    "extra_starts": []
  }
})json";

const std::map<std::string, const std::string*>& fixture_table() {
    static const std::map<std::string, const std::string*> table = {
        {"example_3_2", &kExample32},       {"example_3_2_tk2", &kExample32Tk2},
        {"kannan_x_over_5", &kKannanXOver5}, {"constant_map", &kConstantMap},
        {"corrupted_cone", &kCorruptedCone}, {"bad_weight", &kBadWeight},
    };
    return table;
}

}  // namespace

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : fixture_table()) names.push_back(name);
    return names;
}

bool is_fixture_name(const std::string& name) { return fixture_table().count(name) > 0; }

const std::string& fixture_json(const std::string& name) {
    auto it = fixture_table().find(name);
    require(it != fixture_table().end(), "unknown fixture '" + name + "'");
    return *it->second;
}

}  // namespace conefix
