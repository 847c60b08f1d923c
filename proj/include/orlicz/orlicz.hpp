#pragma once

#include "orlicz/errors.hpp"
#include "orlicz/lab.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/report.hpp"
#include "orlicz/sampler.hpp"
#include "orlicz/special.hpp"
#include "orlicz/stats.hpp"
#include "orlicz/tilt.hpp"
#include "orlicz/volume.hpp"
#include "orlicz/young.hpp"
