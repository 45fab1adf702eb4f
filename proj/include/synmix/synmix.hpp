#ifndef SYNMIX_SYNMIX_HPP
#define SYNMIX_SYNMIX_HPP

#include "synmix/annotations.hpp"
#include "synmix/error.hpp"
#include "synmix/geometry.hpp"
#include "synmix/metrics.hpp"
#include "synmix/mixing.hpp"
#include "synmix/random.hpp"
#include "synmix/scaling.hpp"
#include "synmix/simulate.hpp"
#include "synmix/stats.hpp"
#include "synmix/version.hpp"

#endif  // SYNMIX_SYNMIX_HPP
