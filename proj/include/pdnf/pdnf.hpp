#pragma once

#include "pdnf/core_model.hpp"
#include "pdnf/distance.hpp"
#include "pdnf/encoder.hpp"
#include "pdnf/error.hpp"
#include "pdnf/families.hpp"
#include "pdnf/format.hpp"
#include "pdnf/fusion.hpp"
#include "pdnf/model.hpp"
#include "pdnf/rng.hpp"
#include "pdnf/sensor.hpp"
#include "pdnf/stochastic.hpp"
#include "pdnf/venjunction.hpp"
