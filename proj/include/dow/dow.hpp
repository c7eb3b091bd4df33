#pragma once

#include "dow/collapse.hpp"
#include "dow/comparator.hpp"
#include "dow/deformation.hpp"
#include "dow/errors.hpp"
#include "dow/event.hpp"
#include "dow/evolution.hpp"
#include "dow/experiments/born_check.hpp"
#include "dow/experiments/double_slit.hpp"
#include "dow/experiments/entangled.hpp"
#include "dow/experiments/localization.hpp"
#include "dow/fft.hpp"
#include "dow/grid.hpp"
#include "dow/parallel.hpp"
#include "dow/potential.hpp"
#include "dow/rng.hpp"
#include "dow/stats.hpp"
#include "dow/trajectory.hpp"
#include "dow/units.hpp"
#include "dow/wavefield.hpp"
