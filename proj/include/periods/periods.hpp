#pragma once

#include "periods/errors.hpp"
#include "periods/intlat.hpp"
#include "periods/linalg.hpp"
#include "periods/exterior.hpp"
#include "periods/torus.hpp"
#include "periods/realstruct.hpp"
#include "periods/random.hpp"
#include "periods/report.hpp"
