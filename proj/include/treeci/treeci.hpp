#pragma once

#include "treeci/chow_liu.hpp"
#include "treeci/common.hpp"
#include "treeci/deduction.hpp"
#include "treeci/errors.hpp"
#include "treeci/gaussian.hpp"
#include "treeci/generators.hpp"
#include "treeci/graph.hpp"
#include "treeci/joint_table.hpp"
#include "treeci/json_io.hpp"
#include "treeci/perfectness.hpp"
#include "treeci/properties.hpp"
#include "treeci/rng.hpp"
