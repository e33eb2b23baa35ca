#pragma once

#define BISTATS_VERSION "0.1.0"
