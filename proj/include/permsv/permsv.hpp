#pragma once

#include "permsv/cycle_diagonal.hpp"
#include "permsv/dist.hpp"
#include "permsv/error.hpp"
#include "permsv/io.hpp"
#include "permsv/log_real.hpp"
#include "permsv/mc.hpp"
#include "permsv/oracle.hpp"
#include "permsv/perm.hpp"
#include "permsv/rng.hpp"
#include "permsv/spectral.hpp"
#include "permsv/walk.hpp"
