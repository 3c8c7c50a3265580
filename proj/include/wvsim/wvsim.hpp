#pragma once

#include "wvsim/cli.hpp"
#include "wvsim/config.hpp"
#include "wvsim/ensemble.hpp"
#include "wvsim/errors.hpp"
#include "wvsim/pointer.hpp"
#include "wvsim/qcore.hpp"
#include "wvsim/rng.hpp"
#include "wvsim/spontaneous.hpp"
#include "wvsim/stimulated.hpp"
#include "wvsim/table.hpp"
#include "wvsim/tsvf.hpp"
#include "wvsim/version.hpp"
