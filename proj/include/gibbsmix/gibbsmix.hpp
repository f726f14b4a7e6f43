#ifndef GIBBSMIX_GIBBSMIX_HPP
#define GIBBSMIX_GIBBSMIX_HPP

#include "gibbsmix/approx.hpp"
#include "gibbsmix/bounds.hpp"
#include "gibbsmix/collections.hpp"
#include "gibbsmix/core.hpp"
#include "gibbsmix/harness.hpp"
#include "gibbsmix/mixer.hpp"
#include "gibbsmix/rng.hpp"
#include "gibbsmix/scenario.hpp"
#include "gibbsmix/shrinkage.hpp"
#include "gibbsmix/tuning.hpp"

#endif  // GIBBSMIX_GIBBSMIX_HPP
