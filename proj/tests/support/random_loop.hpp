#pragma once

#include "loopfock/dvr/random_loop.hpp"

namespace loopfock {
namespace testing = sample;
}  // namespace loopfock
